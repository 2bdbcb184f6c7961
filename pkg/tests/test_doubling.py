import random
import unittest

from rank2.doubling import crossed_product_verdict, double, format_pair_path
from rank2.errors import DegenerateCounts
from rank2.periodicity import VerdictKind
from rank2.theta_graph import (
    Degree,
    commute_bf,
    enumerate_paths,
    flip_spec,
    random_spec,
    twin_spec,
    validate_theta,
)


class TestDouble(unittest.TestCase):

    def test_random_doubles_are_bijections(self) -> None:
        rng = random.Random(99)
        for _ in range(100):
            spec = random_spec(rng.choice([2, 3, 4]), rng.choice([2, 3, 4]), rng)
            eta = double(spec)
            validate_theta(eta.spec)
            self.assertEqual((eta.spec.n1, eta.spec.n2), (spec.n1**2, spec.n2**2))

    def test_rule_applies_theta_coordinatewise(self) -> None:
        spec = random_spec(3, 2, random.Random(4))
        eta = double(spec)
        for e, f in [(0, 1), (2, 2), (1, 0)]:
            for g, h in [(0, 1), (1, 1)]:
                g2, e2 = commute_bf(spec, e, g)
                h2, f2 = commute_bf(spec, f, h)
                red, blue = commute_bf(eta.spec, eta.encode_blue(e, f), eta.encode_red(g, h))
                self.assertEqual(eta.red_pair(red), (g2, h2))
                self.assertEqual(eta.blue_pair(blue), (e2, f2))

    def test_flip_doubles_to_flip(self) -> None:
        self.assertEqual(double(flip_spec(2, 3)).spec, flip_spec(4, 9))

    def test_encoding(self) -> None:
        eta = double(flip_spec(3, 2))
        self.assertEqual(eta.encode_blue(2, 1), 7)
        self.assertEqual(eta.blue_pair(7), (2, 1))
        self.assertEqual(eta.encode_red(1, 1), 3)
        self.assertEqual(eta.red_pair(3), (1, 1))
        self.assertEqual(eta.provenance()["blue"]["7"], [2, 1])

    def test_pair_notation(self) -> None:
        eta = double(twin_spec(2))
        path = enumerate_paths(eta.spec, Degree(1, 1))[-1]
        self.assertEqual(format_pair_path(eta, path), "(b1 b1) (r1 r1)")


class TestCrossedProduct(unittest.TestCase):

    def test_unrelated_counts_are_simple(self) -> None:
        report = crossed_product_verdict(random_spec(2, 3, random.Random(8)))
        self.assertTrue(report.simple)
        self.assertTrue(report.purely_infinite)
        self.assertEqual(report.periodicity.kind, VerdictKind.NO_CANDIDATE_PAIRS)
        self.assertFalse(report.to_json()["bounded"])
        self.assertIn("not rationally related", report.reason)

    def test_twin_is_not_simple(self) -> None:
        report = crossed_product_verdict(twin_spec(2))
        self.assertFalse(report.simple)
        self.assertIsNone(report.purely_infinite)
        self.assertFalse(report.bounded)
        witness = report.periodicity.witness
        self.assertEqual((witness.a, witness.b), (1, 1))
        self.assertIn(("(b0 b1)", "(r0 r1)"), report.gamma_pairs)
        self.assertEqual(report.to_json()["doubled_periodicity"]["verdict"], "periodic")

    def test_flip_is_simple_for_checked_multiples(self) -> None:
        report = crossed_product_verdict(flip_spec(2, 2), kmax=2)
        self.assertTrue(report.simple)
        self.assertEqual(report.periodicity.kind, VerdictKind.APERIODIC)
        self.assertTrue(report.bounded)
        self.assertTrue(report.to_json()["bounded"])

    def test_strict_is_undecided(self) -> None:
        report = crossed_product_verdict(flip_spec(2, 2), kmax=1, strict=True)
        self.assertIsNone(report.simple)

    def test_degenerate(self) -> None:
        with self.assertRaises(DegenerateCounts):
            crossed_product_verdict(flip_spec(1, 3))


if __name__ == "__main__":
    unittest.main()
