"""Command line front end.

    trifermion invariants STATE.json
    trifermion classify STATE.json          # exit code = rank (4, 3, 2, 1, 0)
    trifermion verify SUITE --samples N --seed S
    trifermion paper-examples

State files use the canonical {"n", "k", "amplitudes"} object; three-qubit
files {"psi": [[re, im] x 8]} are embedded automatically. Unreadable input
exits with status 65.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import sqrt
from typing import Sequence

import numpy as np

from . import __version__
from .classify import Tolerances, canonical_representative, classify
from .exterior import REL_TOL, FermionState, norm_squared, reduced_density_single, state_from_json
from .invariants import dual_eps, kappa_count, pluecker_forms_3_6, t123_eps
from .qubits import GHZ, W, embed, qubits_from_json, three_tangle
from .states import OMEGA, PHI, PSI, k_family
from .verify import RNG_NAME, SUITES, run_suite

EXIT_BAD_INPUT = 65


class InputError(Exception):
    pass


def _load(path: str) -> FermionState:
    try:
        with open(path) as fh:
            data = json.load(fh)
        if isinstance(data, dict) and "psi" in data:
            return embed(qubits_from_json(data))
        state = state_from_json(data)
    except (OSError, ValueError, KeyError, TypeError, IndexError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    if (state.n, state.k) != (6, 3):
        raise InputError(f"{path}: expected n=6, k=3, got n={state.n}, k={state.k}")
    return state


def _c(z: complex) -> dict:
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def _fmt(z: complex) -> str:
    z = complex(z)
    if abs(z.imag) < 1e-15:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _emit(args, payload: dict, human: str) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) if args.format == "json" else human
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _tol(args) -> Tolerances:
    return Tolerances(rel=args.tol)


def invariants_report(p: FermionState, tol: Tolerances = Tolerances()) -> dict:
    rep = classify(p, tol)
    d = dual_eps(p)
    return {
        "norm_squared": norm_squared(p),
        "t123": _c(rep.t123),
        # tangle of the normalized state
        "tangle": abs(rep.t123) / norm_squared(p) ** 2 if rep.norm > 0 else 0.0,
        "dual": [{"indices": list(key), **_c(v)} for key, v in d.amplitudes.items() if abs(v) > rep.tol3],
        "dual_max_abs": rep.dual_max_abs,
        "pluecker_max_abs": rep.pluecker_max_abs,
        "pluecker_nonzero": [f.to_json() for f in pluecker_forms_3_6(p) if abs(f.value) > rep.tol2],
        "rank": int(rep.rank),
        "rank_label": rep.rank.label,
        "ill_conditioned": rep.ill_conditioned,
    }


def cmd_invariants(args) -> int:
    p = _load(args.path)
    rep = invariants_report(p, _tol(args))
    lines = [
        f"norm^2            {rep['norm_squared']:.12g}",
        f"T123              {_fmt(complex(rep['t123']['re'], rep['t123']['im']))}",
        f"tangle            {rep['tangle']:.12g}",
        f"dual max |amp|    {rep['dual_max_abs']:.12g}",
    ]
    for e in rep["dual"]:
        lines.append(f"  dual P~{''.join(map(str, e['indices']))}     {_fmt(complex(e['re'], e['im']))}")
    lines.append(f"Pluecker max      {rep['pluecker_max_abs']:.12g}")
    lines.append(f"rank              {rep['rank']} ({rep['rank_label']})")
    if rep["ill_conditioned"]:
        lines.append("warning: a witness lies within a factor 10 of its threshold")
    _emit(args, rep, "\n".join(lines))
    return 0


def cmd_classify(args) -> int:
    p = _load(args.path)
    rep = classify(p, _tol(args))
    _emit(args, rep.to_json(), f"{rep.rank.label} (rank {int(rep.rank)})")
    return int(rep.rank)


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    results = [run_suite(name, args.samples, args.seed, workers=args.workers) for name in names]
    payload = {"rng": RNG_NAME, "seed": args.seed, "samples": args.samples, "suites": [r.to_json() for r in results]}
    lines = []
    for r in results:
        worst = max(r.worst.values(), default=0.0)
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name:26s} samples={r.samples} seed={r.seed} worst error/allowed={worst:.3g}")
    _emit(args, payload, "\n".join(lines))
    return 0 if all(r.passed for r in results) else 1


def paper_example_rows() -> list[dict]:
    """Expected vs computed values for the worked examples."""
    rows = []

    def add(name, quantity, expected, computed, atol=1e-12):
        ok = abs(complex(expected) - complex(computed)) <= atol * max(1.0, abs(complex(expected)))
        rows.append({"state": name, "quantity": quantity, "expected": _c(expected), "computed": _c(computed), "ok": bool(ok)})

    add("Psi", "tangle", 8 / 9, abs(t123_eps(PSI)))
    add("Phi", "tangle", 0, abs(t123_eps(PHI)))
    add("Phi", "dual P~135", -2 * sqrt(3) / 9, dual_eps(PHI)[1, 3, 5])
    rho_expected = np.diag([2, 1, 2, 1, 2, 1]) / 3
    for name, st in (("Psi", PSI), ("Phi", PHI)):
        add(name, "max|rho1 - diag(2,1,2,1,2,1)/3|", 0, float(np.max(np.abs(reduced_density_single(st) - rho_expected))))
    add("Omega", "max Pluecker", 0, max(abs(f.value) for f in pluecker_forms_3_6(OMEGA)))
    add("Omega", "rank", 1, int(classify(OMEGA).rank))
    for k in (1, 2, 0.5, 1j, 1 + 1j):
        add(f"k-family k={_fmt(k)}", "T123", 16 * k, t123_eps(k_family(k)), atol=1e-10)
    for r in (4, 3, 2, 1):
        add(f"canonical rank {r}", "rank", r, int(classify(canonical_representative(r)).rank))
    add("canonical rank 4", "tangle", 1, abs(t123_eps(canonical_representative(4))))
    add("embed(GHZ)", "tau", 1, three_tangle(GHZ))
    add("embed(GHZ)", "tangle", 1, abs(t123_eps(embed(GHZ))))
    add("embed(W)", "tau", 0, three_tangle(W))
    add("(n,k)=(6,3)", "distinct Pluecker forms", 45, kappa_count(6, 3).enumerated)
    add("(n,k)=(4,2)", "distinct Pluecker forms", 1, kappa_count(4, 2).enumerated)
    return rows


def cmd_paper_examples(args) -> int:
    rows = paper_example_rows()
    lines = [f"{'state':22s} {'quantity':34s} {'expected':>20s} {'computed':>24s}  ok"]
    for r in rows:
        e = complex(r["expected"]["re"], r["expected"]["im"])
        c = complex(r["computed"]["re"], r["computed"]["im"])
        lines.append(f"{r['state']:22s} {r['quantity']:34s} {_fmt(e):>20s} {_fmt(c):>24s}  {'yes' if r['ok'] else 'NO'}")
    _emit(args, {"rows": rows}, "\n".join(lines))
    return 0 if all(r["ok"] for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default=None)
    common.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--tol", type=float, default=REL_TOL, help="relative zero threshold (default %(default)g)")

    parser = argparse.ArgumentParser(prog="trifermion", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="print T123, dual, Pluecker witnesses and rank")
    p.add_argument("path")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify", parents=[common], help="JSON report; exit code is the rank")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="run a seeded randomized suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("paper-examples", parents=[common], help="expected vs computed table for the worked examples")
    p.set_defaults(func=cmd_paper_examples)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "classify" else "human"
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
