import unittest
from unittest.mock import patch

from colorama import Fore

from utils import utils


class TestFunctions(unittest.TestCase):

    def test_timestamp(self) -> None:
        result = utils.timestamp()
        self.assertIsInstance(result, str)
        # Ensure format is correct (e.g., "YYYY-MM-DD HH:MM:SS")
        self.assertEqual(len(result), 19)

    @patch("builtins.print")
    def test_print_status(self, mock_print) -> None:
        utils.print_status("Test status message")
        mock_print.assert_called_once()
        text = mock_print.call_args.args[0]
        self.assertTrue(text.startswith(Fore.CYAN))
        self.assertTrue(text.endswith("Test status message"))

    @patch("builtins.print")
    def test_print_error(self, mock_print) -> None:
        utils.print_error("Test error message")
        mock_print.assert_called_once()
        self.assertTrue(mock_print.call_args.args[0].startswith(Fore.RED))

    def test_parse_pair(self) -> None:
        self.assertEqual(utils.parse_pair("2,2"), (2, 2))
        self.assertEqual(utils.parse_pair("(1, 3)"), (1, 3))
        with self.assertRaises(ValueError):
            utils.parse_pair("2")
        with self.assertRaises(ValueError):
            utils.parse_pair("a,b")

    def test_parse_ints(self) -> None:
        self.assertEqual(utils.parse_ints("4, -2,0"), [4, -2, 0])
        with self.assertRaises(ValueError):
            utils.parse_ints("4,x")

    def test_dump_json_is_sorted(self) -> None:
        self.assertEqual(utils.dump_json({"b": 1, "a": [1, 2]}), utils.dump_json({"a": [1, 2], "b": 1}))
        self.assertTrue(utils.dump_json({"b": 1, "a": 2}).index('"a"') < utils.dump_json({"b": 1, "a": 2}).index('"b"'))

    def test_render_table(self) -> None:
        table = utils.render_table([{"check": "x", "passed": True}, {"check": "y", "passed": False, "failure": "z"}])
        lines = table.splitlines()
        self.assertEqual(len(lines), 3)
        self.assertIn("failure", lines[0])
        self.assertEqual(utils.render_table([]), "")

    @patch("click.echo")
    def test_emit(self, mock_echo) -> None:
        utils.emit({"a": 1}, "json", [{"a": 1}])
        self.assertEqual(mock_echo.call_args.args[0], utils.dump_json({"a": 1}))
        utils.emit({"a": 1}, "table", [{"a": 1}])
        self.assertEqual(mock_echo.call_args.args[0], utils.render_table([{"a": 1}]))


if __name__ == "__main__":
    unittest.main()
