# -*- coding: utf-8 -*-
"""
Test suite for utils/logging.py.
"""
from __future__ import annotations

import io
import logging
import unittest

from emd_simplex.utils.logging import (
    _level_from_string,
    compact_json,
    emd_logger,
    get_emd_logger,
    set_level,
)


class TestLevels(unittest.TestCase):
    """Level parsing and overrides."""

    def setUp(self):
        self.addCleanup(emd_logger.setLevel, emd_logger.level)

    def test_level_from_string(self):
        self.assertEqual(_level_from_string("debug"), logging.DEBUG)
        self.assertEqual(_level_from_string("ERROR"), logging.ERROR)
        self.assertEqual(_level_from_string("chatty", logging.WARNING), logging.WARNING)

    def test_set_level_by_name(self):
        set_level("ERROR")
        self.assertEqual(emd_logger.level, logging.ERROR)
        set_level(logging.INFO)
        self.assertEqual(emd_logger.level, logging.INFO)

    def test_unknown_name_keeps_level(self):
        set_level("INFO")
        set_level("nonsense")
        self.assertEqual(emd_logger.level, logging.INFO)


class TestLoggerFactory(unittest.TestCase):
    """One handler per logger, writing LEVEL: message."""

    def test_single_handler(self):
        a = get_emd_logger("emd_simplex.test_factory")
        b = get_emd_logger("emd_simplex.test_factory")
        self.assertIs(a, b)
        self.assertEqual(len(a.handlers), 1)
        self.assertFalse(a.propagate)

    def test_format(self):
        logger = get_emd_logger("emd_simplex.test_format")
        stream = io.StringIO()
        logger.handlers[0].setStream(stream)
        logger.setLevel(logging.INFO)
        logger.info("hello %s", 7)
        self.assertEqual(stream.getvalue(), "INFO: hello 7\n")


class TestCompactJson(unittest.TestCase):
    """Single-line JSON for log records."""

    def test_compact(self):
        self.assertEqual(compact_json({"a": [1, 2]}), '{"a":[1,2]}')

    def test_truncates(self):
        s = compact_json(list(range(1000)), limit=20)
        self.assertTrue(s.endswith("…(truncated)"))
        self.assertEqual(len(s), 20 + len("…(truncated)"))

    def test_unserialisable_falls_back_to_str(self):
        self.assertEqual(compact_json({"s": {1}}), '{"s":"{1}"}')


# Run tests if executed directly
if __name__ == "__main__":
    logging.basicConfig(level=logging.WARNING)
    unittest.main(verbosity=2)
