import random
import unittest
from unittest.mock import MagicMock

from rank2.identities import SuitePlan, core_words, run_identity_suite
from rank2.theta_graph import Degree, flip_spec, random_spec, twin_spec


class TestSuitePlan(unittest.TestCase):

    def test_exhaustive_when_small(self) -> None:
        plan = SuitePlan(random.Random(0), limit=100, samples=5)
        picks, exhaustive = plan.indices([2, 3])
        self.assertTrue(exhaustive)
        self.assertEqual(picks, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)])

    def test_sampled_when_large(self) -> None:
        picks, exhaustive = SuitePlan(random.Random(0), limit=10, samples=5).indices([10, 10])
        self.assertFalse(exhaustive)
        self.assertEqual(len(picks), 5)
        self.assertTrue(all(0 <= i < 10 and 0 <= j < 10 for i, j in picks))
        again, _ = SuitePlan(random.Random(0), limit=10, samples=5).indices([10, 10])
        self.assertEqual(picks, again)

    def test_core_words(self) -> None:
        # 1 + 4 + 4 + 16 balanced words up to (1,1) with two edges of each colour
        self.assertEqual(len(core_words(flip_spec(2, 2), Degree(1, 1))), 25)


class TestSuite(unittest.TestCase):

    def assertAllPass(self, results) -> None:
        failed = [(r.name, r.failure) for r in results if not r.passed]
        self.assertEqual(failed, [])

    def test_flip_exhaustive(self) -> None:
        results = run_identity_suite(flip_spec(2, 2), Degree(1, 1))
        self.assertAllPass(results)
        names = [r.name for r in results]
        # triples of arbitrary words are always sampled
        self.assertEqual(
            [r.name for r in results if not r.exhaustive], ["*-algebra axioms"]
        )
        self.assertIn("T_ef T_gh = T_eta(ef gh)", names)
        commutation = results[names.index("T_ef T_gh = T_eta(ef gh)")]
        self.assertEqual(commutation.cases, 16)

    def test_twin_and_random(self) -> None:
        self.assertAllPass(run_identity_suite(twin_spec(2), Degree(1, 1)))
        self.assertAllPass(
            run_identity_suite(random_spec(2, 3, random.Random(6)), Degree(1, 1))
        )

    def test_sampled_at_two_two(self) -> None:
        results = run_identity_suite(
            random_spec(2, 2, random.Random(12)), Degree(2, 2), seed=3, samples=8, limit=4096
        )
        self.assertAllPass(results)
        by_name = {r.name: r for r in results}
        self.assertFalse(by_name["L_n(alpha_n(a) b) = a L_n(b)"].exhaustive)
        self.assertTrue(by_name["L_n(1) = 1"].exhaustive)

    def test_default_limit_at_two_two(self) -> None:
        results = run_identity_suite(flip_spec(2, 2), Degree(2, 2))
        self.assertAllPass(results)
        by_name = {r.name: r for r in results}
        for name, cases in [
            ("L_m L_n = L_(m+n)", 15876),
            ("<m_(mu nu), m_(alpha beta)> = delta", 74529),
            ("L_n(alpha_n(a)) = a", 3969),
        ]:
            self.assertTrue(by_name[name].exhaustive, name)
            self.assertEqual(by_name[name].cases, cases)
        self.assertFalse(by_name["L_n(alpha_n(a) b) = a L_n(b)"].exhaustive)

    def test_progress_callback(self) -> None:
        callback = MagicMock()
        results = run_identity_suite(flip_spec(2, 2), Degree(0, 1), on_check=callback)
        self.assertEqual(callback.call_count, len(results))

    def test_report(self) -> None:
        result = run_identity_suite(flip_spec(2, 2), Degree(0, 0))[0]
        self.assertEqual(
            result.to_json(),
            {"check": "L_n(1) = 1", "cases": 1, "mode": "exhaustive", "passed": True},
        )


if __name__ == "__main__":
    unittest.main()
