"""Command-line entry point.

Every command writes one JSON object (with ``"schema": 1``) to stdout and a
short human summary to stderr. Exit codes: 0 ok, 2 parse error, 3 resource
cap, 4 uncorrectable syndrome, 1 anything else.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import algorithms, bloch
from .circuit import CircuitSyntaxError, parse_circuit, run
from .css import (
    build_css,
    ec_round,
    logical_state,
    logical_zero,
    steane_code,
)
from .f2 import F2DimensionError, F2Matrix
from .pauli import UnsupportedGateError, apply_pauli, parse_pauli, propagate, render_pauli
from .statevec import BooleanFunction, ResourceError, fidelity

SCHEMA = 1

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_UNCORRECTABLE = 4


class Uncorrectable(Exception):
    def __init__(self, payload: dict):
        super().__init__("uncorrectable syndrome")
        self.payload = payload


def _emit(payload: dict, summary: str) -> None:
    out = {"schema": SCHEMA}
    out.update(payload)
    json.dump(out, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise ValueError(f"bad complex number {text!r}") from exc


def _read_circuit(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_circuit(text)


def _error_terms(text: str) -> str:
    return "".join(t.strip() for t in text.split(",") if t.strip()) or "I1"


# ---------------------------------------------------------------------------
# commands


def cmd_run(args) -> None:
    circuit = _read_circuit(args.file)
    report = run(circuit, args.shots, args.seed, args.dump_state)
    top = max(report.frequencies.items(), key=lambda kv: kv[1]) if report.frequencies else ("", 0)
    _emit(
        {k: v for k, v in report.to_dict().items() if k != "schema"},
        f"{args.shots} shots, {len(report.frequencies)} distinct outcomes, most frequent {top[0] or '(none)'} at {top[1]:.3f}",
    )


def cmd_correlations(args) -> None:
    f = BooleanFunction.from_hex(args.table, args.n)
    classical = algorithms.correlation_spectrum_classical(f)
    quantum = algorithms.correlation_spectrum_quantum(f)
    diff = float(np.max(np.abs(classical.values - quantum.values)))
    _emit(
        {
            "n": f.arity,
            "table": f.to_bitstring(),
            "classical": classical.items(),
            "quantum": quantum.items(),
            "max_abs_difference": diff,
            "parseval": classical.parseval(),
        },
        f"n={f.arity}: quantum and classical spectra differ by at most {diff:.3g}",
    )


def cmd_dj(args) -> None:
    f = BooleanFunction.from_hex(args.table, args.n)
    res = algorithms.deutsch_jozsa(f, args.seed)
    _emit({"n": f.arity, **res.to_dict()}, f"one oracle call, measured w={res.w}: {res.verdict}")


def _run_ec(code, args, error_text: str) -> None:
    n = code.n
    err = parse_pauli(_error_terms(error_text), n)
    if code.logical_x_vector is None:
        clean = logical_zero(code).dense
    else:
        clean = logical_state(code, _complex(args.alpha), _complex(args.beta)).dense
    noisy = apply_pauli(clean, err)
    out, report = ec_round(noisy, code, args.seed, order="ZX" if args.z_first else "XZ")
    if not report.uncorrectable:
        report.fidelity = fidelity(out, clean)
    payload = {"code": code.name, "error": render_pauli(err), **report.to_dict()}
    if args.dump_state:
        payload["final_state"] = out.dump()
    if report.uncorrectable:
        raise Uncorrectable(payload)
    _emit(
        payload,
        f"x-syndrome {''.join(map(str, report.x_syndrome))}, z-syndrome {''.join(map(str, report.z_syndrome))}, "
        f"correction {report.correction_text}, fidelity {report.fidelity:.12f}",
    )


def cmd_steane_demo(args) -> None:
    _run_ec(steane_code(), args, args.error)


def cmd_steane_encode(args) -> None:
    code = steane_code()
    state = logical_state(code, _complex(args.alpha), _complex(args.beta))
    payload = {
        "code": code.name,
        "alpha": str(_complex(args.alpha)),
        "beta": str(_complex(args.beta)),
        "support": state.dense.support(),
    }
    if args.dump_state:
        payload["final_state"] = state.dense.dump()
    _emit(payload, f"encoded on {code.n} qubits, {len(payload['support'])} nonzero amplitudes")


def cmd_ec(args) -> None:
    rows = [r.strip() for r in args.p.split(",") if r.strip()]
    p = F2Matrix.from_text("\n".join(rows))
    code = build_css(p, x_stabilisers=not args.z_only, z_stabilisers=not args.x_only, name="custom")
    _run_ec(code, args, args.error)


def _split_fault(spec: str) -> tuple[str, str | None]:
    if "@" in spec:
        pauli, label = spec.rsplit("@", 1)
        return pauli, label
    return spec, None


def cmd_propagate(args) -> None:
    circuit = _read_circuit(args.file)
    text, label = _split_fault(args.fault)
    p = parse_pauli(text, circuit.num_qubits)
    out = propagate(p, circuit, label if label is not None else 0)
    _emit(
        {
            "fault": render_pauli(p),
            "at": label,
            "result": render_pauli(out),
            "result_mask": render_pauli(out, "mask"),
            "weight": out.weight,
        },
        f"{render_pauli(p)} at {label or 'start'} propagates to {render_pauli(out)}",
    )


def cmd_bloch(args) -> None:
    state = bloch.parse_qubit(args.state)
    pt = bloch.bloch_point(state)
    _emit(pt.to_dict(), f"(z, x, y) = ({pt.z:.6g}, {pt.x:.6g}, {pt.y:.6g})")


def cmd_superdense(args) -> None:
    bits = args.bits.strip()
    if len(bits) != 2 or set(bits) - {"0", "1"}:
        raise ValueError("--bits takes two binary digits, e.g. 10")
    got = algorithms.superdense(bits, args.seed)
    received = f"{got[0]}{got[1]}"
    _emit({"sent": bits, "received": received, "ok": received == bits}, f"sent {bits}, received {received}")


def cmd_teleport(args) -> None:
    psi = bloch.parse_qubit(args.state)
    res = algorithms.teleport(psi, args.seed)
    fid = fidelity(res.corrected, psi)
    _emit(
        {
            "bits": list(res.bits),
            "correction": render_pauli(res.correction),
            "probability": res.probability,
            "bob_state": res.bob_state.dump(),
            "fidelity": fid,
        },
        f"Bell outcome {res.bits[0]}{res.bits[1]}, correction {render_pauli(res.correction)}, fidelity {fid:.12f}",
    )


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qdesk", description="Small state-vector quantum workbench.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a circuit file ('-' for stdin)")
    p.add_argument("file")
    p.add_argument("--shots", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dump-state", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("correlations", help="correlation spectrum of a truth table")
    p.add_argument("--table", required=True, help="bit-string (f(0) first) or hex")
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_correlations)

    p = sub.add_parser("dj", help="Deutsch-Jozsa on a truth table")
    p.add_argument("--table", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_dj)

    ec_flags = argparse.ArgumentParser(add_help=False)
    ec_flags.add_argument("--error", default="", help="comma-separated Pauli terms, e.g. X2,Z5")
    ec_flags.add_argument("--alpha", default="0.6")
    ec_flags.add_argument("--beta", default="0.8")
    ec_flags.add_argument("--seed", type=int, default=0)
    ec_flags.add_argument("--dump-state", action="store_true")
    ec_flags.add_argument("--z-first", action="store_true", help="measure Z checks before X checks")

    steane = sub.add_parser("steane", help="Steane code demos")
    ssub = steane.add_subparsers(dest="steane_command", required=True)
    p = ssub.add_parser("demo", parents=[ec_flags], help="encode, inject, correct, report")
    p.set_defaults(func=cmd_steane_demo)
    p = ssub.add_parser("encode", help="encode alpha|0>_L + beta|1>_L")
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="0")
    p.add_argument("--dump-state", action="store_true")
    p.set_defaults(func=cmd_steane_encode)

    p = sub.add_parser("ec", parents=[ec_flags], help="error-correction round for a CSS code given by P")
    p.add_argument("--p", required=True, help="comma-separated rows, e.g. 1100,0011")
    fam = p.add_mutually_exclusive_group()
    fam.add_argument("--z-only", action="store_true")
    fam.add_argument("--x-only", action="store_true")
    p.set_defaults(func=cmd_ec)

    p = sub.add_parser("propagate", help="push a Pauli fault through a Clifford circuit")
    p.add_argument("file")
    p.add_argument("--fault", required=True, help="Pauli with wires and optional label, e.g. Z8@z1.2")
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("bloch", help="Bloch coordinates of a qubit")
    p.add_argument("--state", required=True, help='"a+bi,c+di"')
    p.set_defaults(func=cmd_bloch)

    p = sub.add_parser("superdense", help="send two bits over one qubit")
    p.add_argument("--bits", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_superdense)

    p = sub.add_parser("teleport", help="teleport a qubit")
    p.add_argument("--state", required=True, help='"a+bi,c+di"')
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_teleport)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        args.func(args)
    except Uncorrectable as exc:
        _emit(exc.payload, "uncorrectable syndrome: no weight-1 correction matches")
        return EXIT_UNCORRECTABLE
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UnsupportedGateError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (CircuitSyntaxError, F2DimensionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
