import json
import os
import tempfile
import unittest
from unittest.mock import patch

from click.testing import CliRunner

import tools
from rank2.theta_graph import flip_spec, spec_to_json, twin_spec


@patch("utils.utils.print_error")
@patch("utils.utils.print_status")
class TestCli(unittest.TestCase):

    def setUp(self) -> None:
        self.runner = CliRunner()
        self.tmp = tempfile.TemporaryDirectory()
        self.twin = self._write("twin.json", spec_to_json(twin_spec(2)))
        self.flip = self._write("flip.json", spec_to_json(flip_spec(2, 2)))
        self.unrelated = self._write("unrelated.json", spec_to_json(flip_spec(2, 3)))
        self.broken = self._write(
            "broken.json", {"n1": 2, "n2": 1, "theta": [[0, 0, 0, 0], [1, 0, 0, 0]]}
        )
        self.z2 = self._write("z2.json", {"kind": "finite", "factors": [2]})
        self.z4 = self._write("z4.json", {"kind": "finite", "factors": [4]})
        self.torus = self._write("torus.json", {"kind": "torus", "rank": 1})

    def tearDown(self) -> None:
        self.tmp.cleanup()

    def _write(self, name: str, data) -> str:
        path = os.path.join(self.tmp.name, name)
        with open(path, "w") as handle:
            json.dump(data, handle)
        return path

    def _run(self, *args: str):
        return self.runner.invoke(tools.cli, list(args))

    def test_twin_periodicity(self, mock_status, mock_error) -> None:
        result = self._run("theta", "periodicity", "--spec", self.twin)
        self.assertEqual(result.exit_code, 0, result.output)
        report = json.loads(result.output)
        self.assertEqual(report["verdict"], "periodic")
        self.assertEqual(report["period"], [1, 1])
        mock_status.assert_called()

    def test_strict_unknown_exits_two(self, mock_status, mock_error) -> None:
        result = self._run("theta", "periodicity", "--spec", self.flip, "--kmax", "2", "--strict")
        self.assertEqual(result.exit_code, 2)
        self.assertEqual(json.loads(result.output)["verdict"], "unknown")
        mock_error.assert_called()

    def test_validate(self, mock_status, mock_error) -> None:
        result = self._run("theta", "validate", "--spec", self.flip)
        self.assertEqual(result.exit_code, 0)
        self.assertTrue(json.loads(result.output)["valid"])

        result = self._run("theta", "validate", "--spec", self.broken)
        self.assertEqual(result.exit_code, 1)
        report = json.loads(result.output)
        self.assertFalse(report["valid"])
        self.assertEqual(report["witness"], [[0, 0], [1, 0]])

    def test_normal_form(self, mock_status, mock_error) -> None:
        result = self._run(
            "theta", "normal-form", "--spec", self.twin, "--word", "r0 b1", "--pattern", "RB"
        )
        self.assertEqual(result.exit_code, 0)
        report = json.loads(result.output)
        self.assertEqual(report["normal_form"], "b0 r1")
        self.assertEqual(report["reordered"], "r0 b1")

    def test_bad_word_exits_one(self, mock_status, mock_error) -> None:
        result = self._run("theta", "normal-form", "--spec", self.twin, "--word", "b7")
        self.assertEqual(result.exit_code, 1)
        mock_error.assert_called()

    def test_double(self, mock_status, mock_error) -> None:
        result = self._run("double", "--spec", self.flip)
        self.assertEqual(result.exit_code, 0)
        report = json.loads(result.output)
        self.assertEqual((report["n1"], report["n2"]), (4, 4))
        self.assertEqual(report["provenance"]["red"]["3"], [1, 1])

    def test_crossed_product(self, mock_status, mock_error) -> None:
        result = self._run("crossed-product", "--spec", self.unrelated)
        self.assertEqual(result.exit_code, 0)
        report = json.loads(result.output)
        self.assertTrue(report["simple"])
        self.assertTrue(report["purely_infinite"])
        self.assertFalse(report["bounded"])

        result = self._run("crossed-product", "--spec", self.twin)
        self.assertEqual(result.exit_code, 0)
        self.assertFalse(json.loads(result.output)["simple"])

        result = self._run("crossed-product", "--spec", self.flip, "--kmax", "1")
        self.assertEqual(result.exit_code, 0)
        report = json.loads(result.output)
        self.assertTrue(report["simple"])
        self.assertTrue(report["bounded"])

    def test_core_verify(self, mock_status, mock_error) -> None:
        result = self._run("core", "verify", "--spec", self.flip, "--max-degree", "1,1")
        self.assertEqual(result.exit_code, 0, result.output)
        report = json.loads(result.output)
        self.assertTrue(report["passed"])
        self.assertEqual(report["max_degree"], [1, 1])

    def test_core_verify_table(self, mock_status, mock_error) -> None:
        result = self._run(
            "--output", "table", "core", "verify", "--spec", self.twin, "--max-degree", "0,1"
        )
        self.assertEqual(result.exit_code, 0)
        self.assertIn("passed", result.output.splitlines()[0])

    def test_group_g123(self, mock_status, mock_error) -> None:
        result = self._run("group", "g123", "--group", self.z2)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(json.loads(result.output)["G3"]["witness"], [2, 2])

    def test_group_classify(self, mock_status, mock_error) -> None:
        result = self._run("group", "classify", "--group", self.torus)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(json.loads(result.output)["verdict"], "purely infinite and simple")

    def test_group_transfer(self, mock_status, mock_error) -> None:
        result = self._run("group", "transfer", "--group", self.z4, "--a", "2", "--values", "0,1,0,0")
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(json.loads(result.output)["values"], ["0", "0", "1/2", "0"])

        result = self._run("group", "transfer", "--group", self.torus, "--a", "2", "--x", "4")
        report = json.loads(result.output)
        self.assertEqual(report["image"], [2])
        self.assertTrue(report["oracle_agrees"])

        result = self._run("group", "transfer", "--group", self.torus, "--a", "2", "--values", "1")
        self.assertEqual(result.exit_code, 1)

    def test_deterministic(self, mock_status, mock_error) -> None:
        first = self._run("crossed-product", "--spec", self.twin).output
        second = self._run("crossed-product", "--spec", self.twin).output
        self.assertEqual(first, second)

    def test_usage_error_exits_one(self, mock_status, mock_error) -> None:
        with patch("sys.argv", ["tools.py", "theta", "periodicity"]):
            with self.assertRaises(SystemExit) as caught:
                tools.main()
        self.assertEqual(caught.exception.code, 1)

    def test_main_passes_unknown_through(self, mock_status, mock_error) -> None:
        argv = ["tools.py", "theta", "periodicity", "--spec", self.flip, "--kmax", "1", "--strict"]
        with patch("sys.argv", argv), patch("click.echo"):
            with self.assertRaises(SystemExit) as caught:
                tools.main()
        self.assertEqual(caught.exception.code, 2)


if __name__ == "__main__":
    unittest.main()
