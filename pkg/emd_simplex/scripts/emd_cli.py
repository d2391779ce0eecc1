#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
emd_cli.py: command-line front end for emd_simplex.

Commands
- compute     EMD, Vol_0..Vol_ceil(d/2), v(t), edge matrix, facet volumes, Min/Med/Maj sizes.
- verify      compute, then every identity check, the three volume routes and (within the
              oracle budget) the brute-force oracle. Exit 1 if anything fails.
- fuzz        draw random families from one seed and verify each; prints the pass/fail tally.
- example     replay a built-in example (fig1, fig2-sec5) with the full walkthrough.
- init-config write an emd_simplex.json with defaults and any overrides.

Exit status: 0 all checks pass, 1 a check failed, 2 input or configuration error.

Reports go to stdout (and to --output atomically); log lines go to stderr.

Usage Examples
--------------

1. Volumes and edges for an instance file:
   emd-simplex compute --input family.txt

2. Check every identity, machine-readable:
   emd-simplex verify --input family.txt --json

3. 100 random families with n <= 4, m <= 4, d <= 3:
   emd-simplex fuzz --seed 1 --count 100 --bounds 4,4,3 --threads 4

4. The four-histogram worked example:
   emd-simplex example fig2-sec5
"""
from __future__ import annotations

import argparse
import concurrent.futures as cf
import os
import pathlib
import sys
import tempfile
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from emd_simplex.api.errors import EmdConfigError, EmdInputError
from emd_simplex.api.fixtures import example_names, get_example, random_instance
from emd_simplex.api.instance_file import InstanceFile, load_instance, parse_instance_text
from emd_simplex.api.report import (
    build_compute_report,
    build_example_report,
    build_verify_report,
    render,
)
from emd_simplex.utils.logging import emd_logger as logger
from emd_simplex.utils.logging import set_level
from emd_simplex.utils.site_config import get_site_config, write_site_config

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def atomic_write(path: pathlib.Path, data: str) -> None:
    """Write ``data`` to a temp file next to ``path``, fsync, then replace ``path``.

    Permission bits of an existing target are kept when possible.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        orig_mode: Optional[int] = path.stat().st_mode & 0o777
    except OSError:
        orig_mode = None

    tf = None
    try:
        with tempfile.NamedTemporaryFile("w", delete=False, dir=path.parent, encoding="utf-8", newline="\n") as tf:
            tf.write(data)
            tf.flush()
            os.fsync(tf.fileno())
        os.replace(tf.name, str(path))
        if orig_mode is not None:
            try:
                os.chmod(str(path), orig_mode)
            except OSError:
                logger.debug("Failed to chmod %s", path)
    finally:
        try:
            if tf is not None and os.path.exists(tf.name):
                os.unlink(tf.name)
        except OSError:
            pass


def parse_bounds(text: str) -> Tuple[int, int, int]:
    """``"4,4,3"`` -> (n_max, m_max, d_max)."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3 or not all(p.isdigit() for p in parts):
        raise EmdInputError(f"--bounds expects n_max,m_max,d_max as nonnegative integers, got {text!r}")
    n_max, m_max, d_max = (int(p) for p in parts)
    if n_max < 1 or d_max < 1:
        raise EmdInputError(f"--bounds needs n_max >= 1 and d_max >= 1, got {text!r}")
    return n_max, m_max, d_max


def _read_instance(path: str) -> InstanceFile:
    if path == "-":
        return parse_instance_text(sys.stdin.read(), source="<stdin>")
    return load_instance(path)


def fuzz_instances(seed: int, count: int, bounds: Tuple[int, int, int]) -> List[InstanceFile]:
    """Every family drawn up front from one Generator, so the corpus does not depend on threads."""
    rng = np.random.default_rng(seed)
    n_max, m_max, d_max = bounds
    return [random_instance(rng, n_max, m_max, d_max, label=f"fuzz:{seed}:{k}") for k in range(count)]


def _failed_checks(report: Dict[str, Any]) -> List[str]:
    failed = [c["name"] for c in report["identities"]["checks"] if not c["holds"]]
    failed += [key for key in ("volume_routes", "oracle") if report[key]["status"] == "fail"]
    return failed


def run_fuzz(
    seed: int,
    count: int,
    bounds: Tuple[int, int, int],
    *,
    budget: Optional[int] = None,
    threads: int = 1,
    max_dimension: Optional[int] = None,
) -> Dict[str, Any]:
    """Verify ``count`` random families in parallel; the summary is ordered by family index."""
    instances = fuzz_instances(seed, count, bounds)

    def _work(inst: InstanceFile) -> Dict[str, Any]:
        return build_verify_report(inst, budget=budget, max_dimension=max_dimension)

    with cf.ThreadPoolExecutor(max_workers=max(1, threads)) as ex:
        reports = list(ex.map(_work, instances))

    failures = []
    skipped = 0
    for k, (inst, rep) in enumerate(zip(instances, reports)):
        if rep["oracle"]["status"] == "skipped":
            skipped += 1
        if not rep["ok"]:
            failures.append(
                {
                    "index": k,
                    "histograms": [list(h.counts) for h in inst.histograms],
                    "failed": _failed_checks(rep),
                }
            )
    logger.info("fuzz seed=%s: %s/%s families pass", seed, count - len(failures), count)
    return {
        "seed": seed,
        "count": count,
        "bounds": {"n_max": bounds[0], "m_max": bounds[1], "d_max": bounds[2]},
        "passed": count - len(failures),
        "failed": len(failures),
        "oracle_skipped": skipped,
        "failures": failures,
        "ok": not failures,
    }


def _emit(args: argparse.Namespace, report: Dict[str, Any]) -> None:
    text = render(report, machine=args.json)
    sys.stdout.write(text)
    sys.stdout.flush()
    if getattr(args, "output", None):
        atomic_write(pathlib.Path(args.output), text)


def _resolve(args: argparse.Namespace, cfg: Dict[str, Any], flag: str, key: str) -> Any:
    value = getattr(args, flag, None)
    return cfg[key] if value is None else value


def run(args: argparse.Namespace) -> int:
    try:
        cfg = get_site_config(getattr(args, "config", None))
        set_level(args.log_level or cfg["emd_log_level"])

        if args.command == "init-config":
            overrides = {
                "emd_oracle_budget": args.budget,
                "emd_max_dimension": args.max_dimension,
                "emd_fuzz_threads": args.threads,
                "emd_log_level": args.log_level,
            }
            data = write_site_config(args.path, {k: v for k, v in overrides.items() if v is not None})
            _emit(args, data)
            return EXIT_OK

        budget = _resolve(args, cfg, "budget", "emd_oracle_budget")
        max_dimension = cfg["emd_max_dimension"]

        if args.command == "compute":
            inst = _read_instance(args.input)
            _emit(args, build_compute_report(inst, filtration=args.filtration, max_dimension=max_dimension))
            return EXIT_OK

        if args.command == "verify":
            inst = _read_instance(args.input)
            report = build_verify_report(inst, budget=budget, filtration=args.filtration, max_dimension=max_dimension)
            _emit(args, report)
            return EXIT_OK if report["ok"] else EXIT_CHECK_FAILED

        if args.command == "example":
            report = build_example_report(
                get_example(args.name), budget=budget, filtration=args.filtration, max_dimension=max_dimension
            )
            _emit(args, report)
            return EXIT_OK if report["ok"] else EXIT_CHECK_FAILED

        if args.command == "fuzz":
            if args.count < 0:
                raise EmdInputError(f"--count must be >= 0, got {args.count}")
            summary = run_fuzz(
                args.seed,
                args.count,
                parse_bounds(args.bounds),
                budget=budget,
                threads=_resolve(args, cfg, "threads", "emd_fuzz_threads"),
                max_dimension=max_dimension,
            )
            _emit(args, summary)
            return EXIT_OK if summary["ok"] else EXIT_CHECK_FAILED

        raise EmdInputError(f"unknown command {args.command!r}")
    except (EmdInputError, EmdConfigError) as e:
        logger.error("%s", e)
        return EXIT_INPUT_ERROR
    except OSError as e:
        logger.error("I/O error: %s", e)
        return EXIT_INPUT_ERROR


def build_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Config file (default: $EMD_SIMPLEX_CONFIG, then ./emd_simplex.json)")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR; overrides emd_log_level")
    common.add_argument("--json", action="store_true", help="Emit JSON instead of key/value text")
    common.add_argument("--output", help="Also write the report to this file (atomically)")

    ap = argparse.ArgumentParser(prog="emd-simplex", description="Generalized earth mover's distance via the EM simplex")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="EMD, volumes, edges and facets of an instance file")
    p.add_argument("--input", "-i", required=True, help="Instance file, or - for stdin")
    p.add_argument("--filtration", action="store_true", help="Append the face filtration table")

    p = sub.add_parser("verify", parents=[common], help="Check every identity and the oracle")
    p.add_argument("--input", "-i", required=True, help="Instance file, or - for stdin")
    p.add_argument("--budget", type=int, help="Oracle candidate cap; overrides emd_oracle_budget")
    p.add_argument("--filtration", action="store_true", help="Append the face filtration table")

    p = sub.add_parser("fuzz", parents=[common], help="Verify seeded random families")
    p.add_argument("--seed", type=int, default=0, help="Seed for numpy.random.default_rng")
    p.add_argument("--count", type=int, default=100, help="Number of families")
    p.add_argument("--bounds", default="4,4,3", help="n_max,m_max,d_max (default: 4,4,3)")
    p.add_argument("--budget", type=int, help="Oracle candidate cap; overrides emd_oracle_budget")
    p.add_argument("--threads", type=int, help="Parallel workers; overrides emd_fuzz_threads")

    p = sub.add_parser("example", parents=[common], help="Replay a built-in example")
    p.add_argument("name", help=f"One of: {', '.join(example_names())}")
    p.add_argument("--budget", type=int, help="Oracle candidate cap; overrides emd_oracle_budget")
    p.add_argument("--filtration", action="store_true", help="Append the face filtration table")

    p = sub.add_parser("init-config", parents=[common], help="Write a config file with defaults")
    p.add_argument("path", help="Where to write the JSON config")
    p.add_argument("--budget", type=int, help="emd_oracle_budget")
    p.add_argument("--max-dimension", type=int, help="emd_max_dimension")
    p.add_argument("--threads", type=int, help="emd_fuzz_threads")

    return ap


def main(argv: Optional[List[str]] = None) -> None:
    args = build_arg_parser().parse_args(argv)
    sys.exit(run(args))


if __name__ == "__main__":
    main()
