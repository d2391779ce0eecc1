# -*- coding: utf-8 -*-
"""
Test suite for site_config.py: defaults, file and environment layering, atomic writes.
"""
from __future__ import annotations

import contextlib
import io
import json
import logging
import os
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from emd_simplex.api.errors import EmdConfigError
from emd_simplex.api.histogram import Histogram
from emd_simplex.api.oracle import brute_force_emd
from emd_simplex.api.simplex import build_labelings
from emd_simplex.api.symmetric_difference import VertexFamily
from emd_simplex.utils.logging import get_emd_logger
from emd_simplex.utils.site_config import CONFIG_ENV_VAR, EMD_DEFAULTS, get_site_config, write_site_config


def clean_env():
    """Environment without any EMD_* keys."""
    return {k: v for k, v in os.environ.items() if not k.startswith("EMD_")}


class TestGetSiteConfig(unittest.TestCase):
    """Reading configuration."""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        self.addCleanup(self._tmp.cleanup)
        patcher = mock.patch.dict(os.environ, clean_env(), clear=True)
        patcher.start()
        self.addCleanup(patcher.stop)

    def write(self, name: str, data) -> Path:
        path = self.tmp / name
        path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
        return path

    def test_defaults_without_file(self):
        """No explicit path, no env var, no ./emd_simplex.json: pure defaults."""
        cwd = os.getcwd()
        os.chdir(self.tmp)
        self.addCleanup(os.chdir, cwd)
        self.assertEqual(get_site_config(), EMD_DEFAULTS)

    def test_file_overrides_defaults(self):
        path = self.write("cfg.json", {"emd_oracle_budget": 50, "emd_log_level": "debug"})
        cfg = get_site_config(path)
        self.assertEqual(cfg["emd_oracle_budget"], 50)
        self.assertEqual(cfg["emd_log_level"], "DEBUG")
        self.assertEqual(cfg["emd_max_dimension"], EMD_DEFAULTS["emd_max_dimension"])

    def test_env_var_names_the_file(self):
        path = self.write("cfg.json", {"emd_max_dimension": 6})
        with mock.patch.dict(os.environ, {CONFIG_ENV_VAR: str(path)}):
            self.assertEqual(get_site_config()["emd_max_dimension"], 6)

    def test_environment_wins_over_file(self):
        path = self.write("cfg.json", {"emd_oracle_budget": 50})
        with mock.patch.dict(os.environ, {"EMD_ORACLE_BUDGET": "75"}):
            self.assertEqual(get_site_config(path)["emd_oracle_budget"], 75)

    def test_missing_named_file(self):
        with self.assertRaises(EmdConfigError):
            get_site_config(self.tmp / "absent.json")

    def test_bad_json(self):
        with self.assertRaises(EmdConfigError):
            get_site_config(self.write("cfg.json", "{not json"))

    def test_non_object(self):
        with self.assertRaises(EmdConfigError):
            get_site_config(self.write("cfg.json", "[1, 2]"))

    def test_bad_integer(self):
        with self.assertRaises(EmdConfigError):
            get_site_config(self.write("cfg.json", {"emd_oracle_budget": "lots"}))
        with self.assertRaises(EmdConfigError):
            get_site_config(self.write("cfg2.json", {"emd_fuzz_threads": 0}))


class TestBrokenConfigInLibraryCalls(unittest.TestCase):
    """A malformed config file surfaces in library calls that fall back on it."""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)
        broken = Path(self._tmp.name) / "broken.json"
        broken.write_text("{oops", encoding="utf-8")
        env = clean_env()
        env[CONFIG_ENV_VAR] = str(broken)
        patcher = mock.patch.dict(os.environ, env, clear=True)
        patcher.start()
        self.addCleanup(patcher.stop)
        self.family = [Histogram((1, 0)), Histogram((0, 1))]

    def test_oracle_budget_lookup_raises(self):
        with self.assertRaises(EmdConfigError):
            brute_force_emd(self.family)
        self.assertEqual(brute_force_emd(self.family, budget=10).value, 1)

    def test_dimension_lookup_raises(self):
        fam = VertexFamily.from_histograms(self.family)
        with self.assertRaises(EmdConfigError):
            build_labelings(fam)
        self.assertEqual(build_labelings(fam, max_dimension=5).vol(1), 1)

    def test_logger_warns_and_keeps_default_level(self):
        err = io.StringIO()
        with contextlib.redirect_stderr(err):
            logger = get_emd_logger("emd_simplex.test_broken_config")
        self.assertEqual(logger.level, logging.WARNING)
        self.assertTrue(err.getvalue().startswith("WARNING: Config ignored for the log level:"))


class TestWriteSiteConfig(unittest.TestCase):
    """Writing configuration atomically."""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        self.addCleanup(self._tmp.cleanup)

    def test_writes_normalised_sorted_json(self):
        path = self.tmp / "sub" / "emd_simplex.json"
        data = write_site_config(path, {"emd_oracle_budget": 99})
        self.assertEqual(data["emd_oracle_budget"], 99)
        text = path.read_text(encoding="utf-8")
        self.assertEqual(json.loads(text), data)
        self.assertEqual(list(json.loads(text)), sorted(data))
        self.assertEqual(os.listdir(path.parent), ["emd_simplex.json"])

    def test_keeps_existing_keys(self):
        path = self.tmp / "emd_simplex.json"
        write_site_config(path, {"emd_max_dimension": 9})
        data = write_site_config(path, {"emd_oracle_budget": 12})
        self.assertEqual((data["emd_max_dimension"], data["emd_oracle_budget"]), (9, 12))

    def test_invalid_override_leaves_no_file(self):
        path = self.tmp / "emd_simplex.json"
        with self.assertRaises(EmdConfigError):
            write_site_config(path, {"emd_max_dimension": "x"})
        self.assertFalse(path.exists())


# Run tests if executed directly
if __name__ == "__main__":
    logging.basicConfig(level=logging.WARNING)
    unittest.main(verbosity=2)
