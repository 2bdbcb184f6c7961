import itertools
import random
import unittest

from rank2.errors import DegenerateCounts, SizeLimitExceeded
from rank2.periodicity import (
    VerdictKind,
    candidate_gamma,
    decide_periodicity,
    gamma_inverse_candidate,
    minimal_exponents,
    periodic_at,
    shift_condition_holds,
    verify_inverse_pairing,
    verify_period,
)
from rank2.theta_graph import (
    Degree,
    blue_edge,
    flip_spec,
    random_spec,
    red_edge,
    twin_spec,
)


class TestMinimalExponents(unittest.TestCase):

    def test_values(self) -> None:
        self.assertEqual(minimal_exponents(2, 2), (1, 1))
        self.assertEqual(minimal_exponents(2, 4), (2, 1))
        self.assertEqual(minimal_exponents(4, 8), (3, 2))
        self.assertEqual(minimal_exponents(9, 3), (1, 2))

    def test_unrelated(self) -> None:
        self.assertIsNone(minimal_exponents(2, 3))
        self.assertIsNone(minimal_exponents(6, 12))

    def test_degenerate(self) -> None:
        with self.assertRaises(DegenerateCounts):
            minimal_exponents(1, 2)


class TestTwin(unittest.TestCase):

    def setUp(self) -> None:
        self.spec = twin_spec(2)

    def test_periodic_at_one_one(self) -> None:
        verdict = decide_periodicity(self.spec)
        self.assertEqual(verdict.kind, VerdictKind.PERIODIC)
        witness = verdict.witness
        self.assertEqual((witness.a, witness.b), (1, 1))
        for i in range(2):
            self.assertEqual(witness.gamma[blue_edge(self.spec, i)], red_edge(self.spec, i))
        self.assertTrue(verify_period(self.spec, 1, 1, witness.gamma))
        self.assertTrue(verify_inverse_pairing(self.spec, witness))
        self.assertEqual(verdict.checked, ((1, 1),))

    def test_mirror_candidate_is_the_inverse(self) -> None:
        verdict = decide_periodicity(self.spec)
        delta = gamma_inverse_candidate(self.spec, 1, 1)
        self.assertEqual(delta, verdict.witness.inverse())

    def test_shift_condition(self) -> None:
        self.assertTrue(shift_condition_holds(self.spec, 1, 1, Degree(2, 2)))

    def test_json(self) -> None:
        report = decide_periodicity(self.spec).to_json()
        self.assertEqual(report["verdict"], "periodic")
        self.assertEqual(report["period"], [1, 1])
        self.assertEqual(report["gamma"], [["b0", "r0"], ["b1", "r1"]])

    def test_wrong_gamma_rejected(self) -> None:
        swapped = {
            blue_edge(self.spec, 0): red_edge(self.spec, 1),
            blue_edge(self.spec, 1): red_edge(self.spec, 0),
        }
        self.assertFalse(verify_period(self.spec, 1, 1, swapped))


class TestFlip(unittest.TestCase):

    def setUp(self) -> None:
        self.spec = flip_spec(2, 2)

    def test_aperiodic_up_to_three(self) -> None:
        verdict = decide_periodicity(self.spec, kmax=3)
        self.assertEqual(verdict.kind, VerdictKind.APERIODIC)
        self.assertEqual(verdict.checked, ((1, 1), (2, 2), (3, 3)))
        report = verdict.to_json()
        self.assertTrue(report["bounded"])
        self.assertNotIn("gamma", report)

    def test_oracle_agrees(self) -> None:
        self.assertIsNone(candidate_gamma(self.spec, 1, 1))
        self.assertFalse(shift_condition_holds(self.spec, 1, 1, Degree(2, 2)))

    def test_strict_is_unknown(self) -> None:
        verdict = decide_periodicity(self.spec, kmax=2, strict=True)
        self.assertEqual(verdict.kind, VerdictKind.UNKNOWN)
        self.assertFalse(verdict.decided)

    def test_cap_after_first_multiple_is_unknown(self) -> None:
        verdict = decide_periodicity(self.spec, kmax=3, cap=10)
        self.assertEqual(verdict.kind, VerdictKind.UNKNOWN)
        self.assertEqual(verdict.checked, ((1, 1),))

    def test_cap_on_first_multiple_raises(self) -> None:
        with self.assertRaises(SizeLimitExceeded):
            decide_periodicity(self.spec, kmax=3, cap=3)


class TestOtherCounts(unittest.TestCase):

    def test_unrelated_counts(self) -> None:
        spec = random_spec(2, 3, random.Random(5))
        verdict = decide_periodicity(spec)
        self.assertEqual(verdict.kind, VerdictKind.NO_CANDIDATE_PAIRS)
        self.assertEqual(verdict.checked, ())

    def test_candidate_needs_equal_counts(self) -> None:
        with self.assertRaises(DegenerateCounts):
            candidate_gamma(flip_spec(2, 4), 1, 1)

    def test_periodic_witnesses_pair_with_their_mirror(self) -> None:
        rng = random.Random(17)
        for _ in range(30):
            spec = random_spec(2, 2, rng)
            verdict = decide_periodicity(spec, kmax=2)
            if verdict.kind != VerdictKind.PERIODIC:
                continue
            w = verdict.witness
            self.assertTrue(verify_inverse_pairing(spec, w))
            self.assertEqual(gamma_inverse_candidate(spec, w.a, w.b), w.inverse())
            self.assertTrue(shift_condition_holds(spec, w.a, w.b, Degree(2 * w.a, 2 * w.b)))


class TestAgainstBruteForce(unittest.TestCase):
    """The constructive decision against the shifted-subpath condition"""

    def setUp(self) -> None:
        rng = random.Random(31)
        self.specs = [twin_spec(2), twin_spec(3), flip_spec(2, 2), flip_spec(3, 3)]
        self.specs += [random_spec(n, n, rng) for n in (2, 3) for _ in range(40)]

    def test_periodic_at_matches_shift_condition(self) -> None:
        outcomes = set()
        for spec in self.specs:
            periodic = periodic_at(spec, 1, 1) is not None
            outcomes.add(periodic)
            for degree in (Degree(2, 2), Degree(3, 3)):
                self.assertEqual(
                    shift_condition_holds(spec, 1, 1, degree), periodic, (spec, degree)
                )
        self.assertEqual(outcomes, {True, False})

    def test_only_the_candidate_verifies(self) -> None:
        for spec in self.specs:
            blues = [blue_edge(spec, e) for e in range(spec.n1)]
            reds = [red_edge(spec, f) for f in range(spec.n2)]
            candidate = candidate_gamma(spec, 1, 1)
            for image in itertools.permutations(reds):
                gamma = dict(zip(blues, image))
                if verify_period(spec, 1, 1, gamma):
                    self.assertEqual(gamma, candidate)

    def test_verify_respects_cap(self) -> None:
        spec = twin_spec(2)
        gamma = candidate_gamma(spec, 1, 1)
        with self.assertRaises(SizeLimitExceeded):
            verify_period(spec, 1, 1, gamma, cap=1)


if __name__ == "__main__":
    unittest.main()
