"""Command-line front end: ``slater-mps <subcommand> ...``.

Data goes to stdout (or ``-o``), diagnostics to stderr.  Exit codes: 0 on
success, 1 when a verification residual exceeds its tolerance, 2 for usage
or input errors.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import statistics
import sys
import time
from contextlib import contextmanager
from typing import Iterable, TextIO

import numpy as np

from . import __version__
from .basis_change import build_grid, inverse_transform_tensor, transform_tensor
from .ci import (CiCoefficients, build_ci_block_mpo, build_ci_compact_mpo,
                 ci_dense_oracle, ci_entropy_bound_check)
from .entanglement import halfcut_entropy
from .fermionic_mpo import Statistics, build_creation_mpo, mpo_to_dense
from .mps import (amplitude, format_occupation, mps_norm, mps_to_dense, occupation_index,
                  occupations, parse_occupation, sector_occupations)
from .orbitals import (OrbitalSet, load_orbitals, localized_set, orbitals_to_json,
                       plane_wave_set, random_orthonormal, require_valid)
from .slater import anyonic_oracle, build_slater_mps, determinant_oracle, stack_slater_mps
from .tensor_core import check_dense_size, dense_cap

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
VERIFY_TOL = 1e-11
CI_TOL = 1e-12
VERIFY_CAP = 8


class UsageError(Exception):
    pass


@contextmanager
def _output(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _emit_json(obj, out: TextIO) -> None:
    out.write(json.dumps(obj) + "\n")


def _emit_amplitudes(entries: Iterable[tuple[str, complex]], out: TextIO) -> None:
    for occ, z in entries:
        out.write(json.dumps({"occ": occ, "re": float(z.real), "im": float(z.imag)}) + "\n")


def _read_amplitudes(path: str, L: int) -> np.ndarray:
    vec = np.zeros(1 << L, dtype=complex)
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                bits = parse_occupation(rec["occ"])
                z = complex(float(rec["re"]), float(rec["im"]))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise UsageError(f"{path}:{lineno}: bad amplitude record ({exc})") from None
            if len(bits) != L:
                raise UsageError(f"{path}:{lineno}: occupation has {len(bits)} sites, expected {L}")
            vec[occupation_index(bits)] += z
    return vec


def _load_valid(path: str) -> OrbitalSet:
    orbitals = load_orbitals(path)
    require_valid(orbitals)
    return orbitals


def _int_list(text: str) -> list[int]:
    """``"4,6,8"`` or ``"2-4"`` or a mix, e.g. ``"2-4,8"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty integer list {text!r}")
    return out


def _complex_pair(values: list[float]) -> complex:
    return complex(values[0], values[1])


# -- subcommands -------------------------------------------------------------

def cmd_gen_orbitals(args) -> int:
    if args.kind == "random":
        orbitals = random_orthonormal(args.L, args.N, args.seed)
    elif args.kind == "plane-wave":
        orbitals = plane_wave_set(args.L, args.N)
    else:
        orbitals = localized_set(args.L, args.N)
    with _output(args.output) as out:
        _emit_json(orbitals_to_json(orbitals), out)
    return EXIT_OK


def cmd_build(args) -> int:
    orbitals = _load_valid(args.orbitals)
    builder = stack_slater_mps if args.stacked else build_slater_mps
    mps = builder(orbitals, args.stat)
    report = {
        "L": mps.L,
        "N": orbitals.N,
        "statistics": str(args.stat),
        "construction": "stacked" if args.stacked else "direct",
        "bond_dims": mps.bond_dims(),
        "max_bond_dim": mps.max_bond_dim,
        "norm": mps_norm(mps),
    }
    if args.save:
        arrays = {f"site_{l + 1}": a for l, a in enumerate(mps.sites)}
        np.savez(args.save, b0=mps.b0, bL=mps.bL, **arrays)
        report["saved"] = args.save
    with _output(args.output) as out:
        _emit_json(report, out)
    return EXIT_OK


def cmd_amplitude(args) -> int:
    orbitals = _load_valid(args.orbitals)
    mps = build_slater_mps(orbitals, args.stat)
    if args.occ:
        occs = [parse_occupation(o) for o in args.occ]
    else:
        occs = list(sector_occupations(orbitals.L, orbitals.N))
    with _output(args.output) as out:
        _emit_amplitudes(((format_occupation(o), amplitude(mps, o)) for o in occs), out)
    return EXIT_OK


def cmd_statevector(args) -> int:
    orbitals = _load_valid(args.orbitals)
    psi = mps_to_dense(build_slater_mps(orbitals, args.stat))
    with _output(args.output) as out:
        _emit_amplitudes(((format_occupation(o), psi[i])
                          for i, o in enumerate(occupations(orbitals.L))), out)
    return EXIT_OK


def cmd_entropy(args) -> int:
    orbitals = _load_valid(args.orbitals)
    if orbitals.L % 2:
        raise UsageError(f"half-cut entropy needs an even number of sites, got L={orbitals.L}")
    report = halfcut_entropy(build_slater_mps(orbitals, args.stat))
    with _output(args.output) as out:
        _emit_json(report.to_json(), out)
    return EXIT_OK


def _verify_one(orbitals: OrbitalSet, stat: Statistics) -> dict:
    mps = build_slater_mps(orbitals, stat)
    L = orbitals.L
    if stat.kind == "fermion":
        reference = np.array([determinant_oracle(orbitals, o) for o in occupations(L)])
    else:
        reference = anyonic_oracle(orbitals, stat)
    amps = np.array([amplitude(mps, o) for o in occupations(L)])
    res = {
        "amplitude": float(np.max(np.abs(amps - reference))),
        "norm": abs(mps_norm(mps) - float(np.linalg.norm(reference))),
        "anticommutator": None,
    }
    if stat.kind == "fermion":
        ops = [mpo_to_dense(build_creation_mpo(row, L)) for row in orbitals.phi]
        eye = np.eye(1 << L)
        worst = 0.0
        for a, b in itertools.product(range(orbitals.N), repeat=2):
            ca, cb = ops[a], ops[b]
            mixed = ca.conj().T @ cb + cb @ ca.conj().T - (eye if a == b else 0)
            both = ca @ cb + cb @ ca
            worst = max(worst, np.max(np.abs(mixed)), np.max(np.abs(both)))
        res["anticommutator"] = float(worst)
    return res


def cmd_verify(args) -> int:
    orbitals = _load_valid(args.orbitals)
    check_dense_size(orbitals.L, VERIFY_CAP)
    sets = [orbitals] + [random_orthonormal(orbitals.L, orbitals.N, s) for s in range(args.seeds)]
    results = [_verify_one(o, args.stat) for o in sets]
    amp = max(r["amplitude"] for r in results)
    norm = max(r["norm"] for r in results)
    anti = None if args.stat.kind != "fermion" else max(r["anticommutator"] for r in results)
    passed = amp < args.tol and norm < args.tol and (anti is None or anti < args.tol)
    report = {
        "L": orbitals.L,
        "N": orbitals.N,
        "statistics": str(args.stat),
        "sets_checked": len(sets),
        "oracle": "determinant" if args.stat.kind == "fermion" else "anyonic",
        "max_amplitude_residual": amp,
        "norm_residual": norm,
        "anticommutator_residual": anti,
        "tolerance": args.tol,
        "pass": passed,
    }
    with _output(args.output) as out:
        _emit_json(report, out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_ci_check(args) -> int:
    orbitals = _load_valid(args.orbitals)
    c = CiCoefficients(_complex_pair(args.alpha), _complex_pair(args.beta), orbitals)
    oracle = ci_dense_oracle(c)
    block = mpo_to_dense(build_ci_block_mpo(c))
    compact = mpo_to_dense(build_ci_compact_mpo(c))
    report = {
        "L": orbitals.L,
        "block_residual": float(np.max(np.abs(block - oracle))),
        "compact_residual": float(np.max(np.abs(compact - oracle))),
        "block_vs_compact": float(np.max(np.abs(block - compact))),
        "entropy": None,
    }
    weight = math.sqrt(abs(c.alpha) ** 2 + abs(c.beta) ** 2)
    if orbitals.L % 2 == 0 and weight > 0:
        unit = CiCoefficients(c.alpha / weight, c.beta / weight, orbitals)
        report["entropy"] = ci_entropy_bound_check(unit).to_json()
    passed = (report["block_residual"] < args.tol and report["compact_residual"] < args.tol
              and report["block_vs_compact"] < args.tol
              and (report["entropy"] is None or report["entropy"]["ok"]))
    report["tolerance"] = args.tol
    report["pass"] = passed
    with _output(args.output) as out:
        _emit_json(report, out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_basis_change(args) -> int:
    basis = _load_valid(args.basis)
    if basis.N != basis.L:
        raise UsageError(f"basis-change needs a full basis (N == L), got N={basis.N}, L={basis.L}")
    grid = build_grid(basis)
    vec = _read_amplitudes(args.input, basis.L)
    result = inverse_transform_tensor(grid, vec) if args.inverse else transform_tensor(grid, vec)
    with _output(args.output) as out:
        _emit_amplitudes(((format_occupation(o), result[i])
                          for i, o in enumerate(occupations(basis.L)) if result[i] != 0), out)
    return EXIT_OK


def cmd_bench(args) -> int:
    with _output(args.output) as out:
        _bench_table(args, csv.writer(out, lineterminator="\n"))
    return EXIT_OK


def _bench_table(args, writer) -> None:
    dense_max_L = min(args.dense_max_L, dense_cap())
    writer.writerow(["L", "N", "build_ms", "amplitude_us_mean", "dense_ms"])
    for L in args.L:
        for N in args.N:
            if N < 1 or N > L:
                continue
            orbitals = random_orthonormal(L, N, args.seed)
            occs = list(itertools.islice(sector_occupations(L, N), args.max_amplitudes))
            build_t, amp_t, dense_t = [], [], []
            for _ in range(args.repeats):
                t0 = time.perf_counter()
                mps = build_slater_mps(orbitals)
                build_t.append(time.perf_counter() - t0)
                t0 = time.perf_counter()
                for o in occs:
                    amplitude(mps, o)
                amp_t.append((time.perf_counter() - t0) / len(occs))
                if L <= dense_max_L:
                    t0 = time.perf_counter()
                    mps_to_dense(mps)
                    dense_t.append(time.perf_counter() - t0)
            writer.writerow([
                L, N,
                f"{1e3 * statistics.median(build_t):.4f}",
                f"{1e6 * statistics.mean(amp_t):.4f}",
                f"{1e3 * statistics.median(dense_t):.4f}" if dense_t else "",
            ])


# -- parser ------------------------------------------------------------------

def _stat_arg(text: str) -> Statistics:
    try:
        return Statistics.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slater-mps", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("-o", "--output", help="output path (default: stdout)")
        return sp

    def stat(sp):
        sp.add_argument("--stat", type=_stat_arg, default=Statistics(),
                        help="fermion (default), boson, or anyon:<phase radians>")

    sp = add("gen-orbitals", cmd_gen_orbitals, "write an orbital JSON file")
    sp.add_argument("--kind", choices=["random", "plane-wave", "localized"], default="random")
    sp.add_argument("-L", type=int, required=True)
    sp.add_argument("-N", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("build", cmd_build, "build the Slater MPS and summarise it")
    sp.add_argument("orbitals")
    stat(sp)
    sp.add_argument("--stacked", action="store_true", help="stack creation MPOs instead")
    sp.add_argument("--save", metavar="NPZ", help="also save the tensors to an .npz file")

    sp = add("amplitude", cmd_amplitude, "dump amplitudes as JSON lines")
    sp.add_argument("orbitals")
    stat(sp)
    sp.add_argument("--occ", action="append", help="occupation string; repeatable")

    sp = add("statevector", cmd_statevector, "dense statevector as JSON lines")
    sp.add_argument("orbitals")
    stat(sp)

    sp = add("entropy", cmd_entropy, "half-cut entanglement entropy")
    sp.add_argument("orbitals")
    stat(sp)

    sp = add("verify", cmd_verify, "check the MPS against brute-force oracles")
    sp.add_argument("orbitals")
    stat(sp)
    sp.add_argument("--seeds", type=int, default=0,
                    help="also check this many random sets of the same shape")
    sp.add_argument("--tol", type=float, default=VERIFY_TOL)

    sp = add("ci-check", cmd_ci_check, "check the 2+2 CI operator MPOs")
    sp.add_argument("orbitals")
    sp.add_argument("--alpha", type=float, nargs=2, metavar=("RE", "IM"), default=[1.0, 0.0])
    sp.add_argument("--beta", type=float, nargs=2, metavar=("RE", "IM"), default=[0.0, 0.0])
    sp.add_argument("--tol", type=float, default=CI_TOL)

    sp = add("basis-change", cmd_basis_change, "map coefficients between one-body bases")
    sp.add_argument("--basis", required=True, help="full-basis orbital file (N == L)")
    sp.add_argument("--input", required=True, help="coefficients in the new basis, JSON lines")
    sp.add_argument("--inverse", action="store_true", help="map old -> new instead")

    sp = add("bench", cmd_bench, "timing table as CSV")
    sp.add_argument("--L", type=_int_list, default=[4, 6, 8])
    sp.add_argument("--N", type=_int_list, default=[1, 2, 3])
    sp.add_argument("--repeats", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-amplitudes", type=int, default=200)
    sp.add_argument("--dense-max-L", type=int, default=10)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"slater-mps {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
