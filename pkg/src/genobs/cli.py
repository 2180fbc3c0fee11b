"""Command-line front end.

Text reports print 15 significant digits and show matrix entries smaller
than ``DISPLAY_ZERO`` as 0; ``--json`` output keeps full precision.

Exit codes: 0 on success (a NotRepresentable verdict is a success), 2 for
unreadable or invalid input, 1 when an internal invariant breaks or no
verdict can be issued.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io, rng
from .born import denominator, prob_effects, sample_outcomes
from .errors import GenObsError, IndeterminateVerdict, InternalInvariantError, ValidationError
from .linalg import DEFAULT_TOL, min_eigenvalue
from .observables import EffectFamily, ObliqueFrame, Pvm, frame_effects, frame_projectors, is_povm
from .representability import decide, reconstruct_candidate
from .states import DensityOperator, GeneralizedState, pure_state
from .transition import frame_transition, is_doubly_stochastic, transition_matrix


DISPLAY_ZERO = 1e-13


class UsageError(ValidationError):
    pass


def fmt(x: float) -> str:
    s = f"{float(x):.15g}"
    return "0" if s == "-0" else s


def fmt_complex(z) -> str:
    z = complex(z)
    re = 0.0 if abs(z.real) < DISPLAY_ZERO else z.real
    im = 0.0 if abs(z.imag) < DISPLAY_ZERO else z.imag
    z = complex(re, im)
    if z.imag == 0:
        return fmt(z.real)
    if z.real == 0:
        return f"{fmt(z.imag)}j"
    sign = "-" if z.imag < 0 else "+"
    return f"{fmt(z.real)}{sign}{fmt(abs(z.imag))}j"


def fmt_matrix(A, indent: str = "  ") -> list[str]:
    return [indent + "[" + ", ".join(fmt_complex(z) for z in row) + "]" for row in np.asarray(A)]


def _emit_json(doc, out):
    out.write(json.dumps(doc, indent=2) + "\n")


def _load_observable(path) -> EffectFamily:
    obj = io.load(path)
    if isinstance(obj, EffectFamily):
        return obj
    if isinstance(obj, ObliqueFrame):
        return frame_effects(obj)
    if isinstance(obj, Pvm):
        return obj.povm()
    raise UsageError(f"{path}: expected an effect_family, frame or pvm document")


def _load_state(path) -> GeneralizedState:
    obj = io.load(path)
    if isinstance(obj, GeneralizedState):
        return obj
    if isinstance(obj, np.ndarray):
        return pure_state(obj)
    raise UsageError(f"{path}: expected a state or state_vector document")


def cmd_prob(args, out):
    E = _load_observable(args.observable)
    rho = _load_state(args.state)
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    dist = prob_effects(E, rho)
    den = denominator(E, rho)
    povm = is_povm(E, tol)
    if args.json:
        _emit_json(
            {
                "labels": list(dist.labels),
                "probabilities": [float(p) for p in dist.probs],
                "denominator": den,
                "is_povm": povm,
            },
            out,
        )
        return 0
    out.write(f"observable: dim {E.dim}, {len(E)} outcomes, POVM: {'yes' if povm else 'no'}\n")
    out.write(f"denominator Tr(rho E(X)): {fmt(den)}\n")
    out.write("label\tprobability\n")
    for lab, p in zip(dist.labels, dist.probs):
        out.write(f"{lab}\t{fmt(p)}\n")
    return 0


def _decide_kwargs(args):
    kw = {"seed": args.seed}
    if args.tol is not None:
        kw["tol"] = args.tol
    return kw


def _write_verdict(v, out):
    out.write(f"status: {v.status.value}\n")
    if v.representable:
        for lab, W in zip(v.povm.labels, v.povm.effects):
            out.write(f"W[{lab}]:\n")
            out.writelines(line + "\n" for line in fmt_matrix(W))
        return
    w = v.witness
    out.write(f"witness outcome: {w.outcome}\n")
    for name, rho in (("state_a", w.state_a), ("state_b", w.state_b), ("midpoint", w.midpoint)):
        out.write(f"{name}:\n")
        out.writelines(line + "\n" for line in fmt_matrix(rho))
    out.write(f"p(outcome | state_a): {fmt(w.p_a)}\n")
    out.write(f"p(outcome | state_b): {fmt(w.p_b)}\n")
    out.write(f"p(outcome | midpoint): {fmt(w.p_mid)}\n")
    out.write(f"average of endpoints: {fmt((w.p_a + w.p_b) / 2)}\n")
    out.write(f"midpoint gap: {fmt(w.gap)}\n")


def cmd_decide(args, out):
    E = _load_observable(args.observable)
    v = decide(E, **_decide_kwargs(args))
    if args.json:
        _emit_json(io.verdict_to_document(v, rng.ALGORITHM), out)
    else:
        _write_verdict(v, out)
    return 0


def cmd_frame(args, out):
    frame = io.load(args.frame)
    if not isinstance(frame, ObliqueFrame):
        raise UsageError(f"{args.frame}: expected a frame document")
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    E = frame_effects(frame)
    doc = io.to_document(E)
    doc["projectors"] = [io.encode_matrix(P) for P in frame_projectors(frame)]
    doc["total"] = io.encode_matrix(E.total)
    doc["min_eigenvalue_total"] = min_eigenvalue(E.total)
    doc["is_povm"] = is_povm(E, tol)
    _emit_json(doc, out)
    return 0


def cmd_transition(args, out):
    A = io.load(args.obs_a)
    B = io.load(args.obs_b)
    if not isinstance(B, Pvm):
        raise UsageError(f"{args.obs_b}: the second observable must be a pvm document")
    if isinstance(A, Pvm):
        P = transition_matrix(A, B)
    elif isinstance(A, ObliqueFrame):
        P = frame_transition(A, B)
    else:
        raise UsageError(f"{args.obs_a}: the first observable must be a pvm or frame document")
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    ds = is_doubly_stochastic(P, tol) if args.check_doubly_stochastic else None
    if args.json:
        doc = {
            "row_labels": list(P.row_labels),
            "col_labels": list(P.col_labels),
            "matrix": P.entries.tolist(),
            "row_sums": P.row_sums.tolist(),
            "col_sums": P.col_sums.tolist(),
        }
        if ds is not None:
            doc["doubly_stochastic"] = ds
        _emit_json(doc, out)
        return 0
    out.write("matrix (rows: conditioning state, columns: outcome):\n")
    for lab, row in zip(P.row_labels, P.entries):
        out.write(f"  {lab}: [" + ", ".join(fmt(p) for p in row) + "]\n")
    out.write("row sums: [" + ", ".join(fmt(s) for s in P.row_sums) + "]\n")
    out.write("column sums: [" + ", ".join(fmt(s) for s in P.col_sums) + "]\n")
    if ds is not None:
        out.write(f"doubly stochastic: {'yes' if ds else 'no'}\n")
    return 0


def cmd_sample(args, out):
    E = _load_observable(args.observable)
    rho = _load_state(args.state)
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    counts = sample_outcomes(E, rho, args.n, args.seed)
    exact = prob_effects(E, rho)
    if args.json:
        _emit_json(
            {
                "rng": rng.ALGORITHM,
                "seed": args.seed,
                "n": args.n,
                "labels": list(exact.labels),
                "counts": [counts[lab] for lab in exact.labels],
                "exact": [float(p) for p in exact.probs],
            },
            out,
        )
        return 0
    out.write(f"rng: {rng.ALGORITHM} seed {args.seed}, n = {args.n}\n")
    out.write("label\tcount\tempirical\texact\n")
    for lab, p in zip(exact.labels, exact.probs):
        c = counts[lab]
        emp = c / args.n if args.n else 0.0
        out.write(f"{lab}\t{c}\t{fmt(emp)}\t{fmt(p)}\n")
    return 0


def example_family() -> EffectFamily:
    """The qubit family ``E_0 = 2|0><0|``, ``E_1 = |1><1|``."""
    return EffectFamily((np.diag([2.0, 0.0]), np.diag([0.0, 1.0])), ("0", "1"))


def cmd_demo_example(args, out):
    E = example_family()
    rhos = [DensityOperator(np.diag(d)) for d in ([1.0, 0.0], [0.0, 1.0], [0.5, 0.5])]
    p = [prob_effects(E, rho)["0"] for rho in rhos]
    W0 = reconstruct_candidate(E)[0]
    x00, x11 = W0[0, 0].real, W0[1, 1].real
    v = decide(E, **_decide_kwargs(args))
    if args.json:
        doc = io.verdict_to_document(v, rng.ALGORITHM)
        doc["example"] = {
            "p_rho1": p[0],
            "p_rho2": p[1],
            "p_rho3": p[2],
            "x00": x00,
            "x11": x11,
            "linear_prediction_rho3": (x00 + x11) / 2,
        }
        _emit_json(doc, out)
        return 0
    out.write("generalized observable: E0 = 2|0><0|, E1 = |1><1|\n")
    out.write(f"E0 + E1 = I: {'yes' if is_povm(E) else 'no'}\n")
    out.write(f"p_E(0|rho1 = diag(1,0)) = {fmt(p[0])}\n")
    out.write(f"p_E(0|rho2 = diag(0,1)) = {fmt(p[1])}\n")
    out.write(f"p_E(0|rho3 = diag(1/2,1/2)) = {fmt(p[2])}\n")
    out.write(f"POVM candidate for outcome 0: x00 = {fmt(x00)}, x11 = {fmt(x11)}\n")
    out.write(f"linear prediction (x00 + x11)/2 = {fmt((x00 + x11) / 2)} != {fmt(p[2])}\n")
    out.write(f"verdict: {v.status.value}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="numeric tolerance")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")

    parser = argparse.ArgumentParser(prog="genobs", description="Generalized observables and Born rule")
    parser.add_argument("--tol", type=float, default=None, help="numeric tolerance")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    parser.add_argument("--json", action="store_true", help="JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prob", parents=[common], help="outcome probabilities of an observable in a state")
    p.add_argument("state")
    p.add_argument("observable")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("decide", parents=[common], help="decide POVM representability")
    p.add_argument("observable")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("frame", parents=[common], help="projectors and effects of an oblique frame")
    p.add_argument("frame")
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("transition", parents=[common], help="transition matrix between two observables")
    p.add_argument("obs_a")
    p.add_argument("obs_b")
    p.add_argument("--check-doubly-stochastic", action="store_true")
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("sample", parents=[common], help="sample measurement outcomes")
    p.add_argument("observable")
    p.add_argument("state")
    p.add_argument("--n", type=int, default=1000)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("demo-example", parents=[common], help="run the qubit non-representability example")
    p.set_defaults(func=cmd_demo_example)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ValidationError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    except (InternalInvariantError, IndeterminateVerdict) as exc:
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 1
    except GenObsError as exc:
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
