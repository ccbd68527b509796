"""Command-line front end.

Every subcommand prints a human-readable report on stdout and, with
``--out``, writes a machine-readable result file (``key=value`` lines plus
matrix blocks, see :mod:`maxplus.io`).  Exit codes: 0 success, 1 parse or
configuration error, 2 failed convergence precheck, 3 no fixed point.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import io
from .axioms import check_axioms
from .bellman import solve
from .dequant import convergence_table, legendre
from .errors import (
    ConfigError,
    MaxPlusError,
    NotStabilized,
    PrecheckFailed,
)
from .interval import IntervalSemiring, embed
from .matrix import Matrix, closure, from_graph
from .semiring import NumericMode, RMax, Semiring, instances
from .spectral import block_form, eigen_interval, eigenvalue, eigenvector, rho

COMMANDS = ("closure", "solve", "eig", "rho", "blocks", "legendre", "dequant-demo", "check-axioms")
MODES = ("scalar", "weak-interval", "strong-interval")

EXIT_OK, EXIT_ERROR, EXIT_PRECHECK, EXIT_NOT_STABILIZED = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple = ()
    semiring: Optional[str] = None
    mode: str = "scalar"
    out: Optional[str] = None
    max_iter: Optional[int] = None
    seed: int = 0
    exact: bool = False
    allow_unchecked: bool = False
    backend: str = "squaring"
    method: str = "auto"
    samples: int = 1000
    xi: tuple = ()
    hs: tuple = (1.0, 0.5, 0.1, 0.01, 0.001)
    w: tuple = (3.0, 5.0)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {', '.join(MODES)}")
        if self.max_iter is not None and self.max_iter < 0:
            raise ConfigError("--max-iter must be nonnegative")


# -- semiring and input resolution --------------------------------------------

def _apply_mode(s: Semiring, mode: str) -> Semiring:
    if mode == "scalar":
        return s
    base = s.base if isinstance(s, IntervalSemiring) else s
    strong = mode == "strong-interval"
    if strong and not base.flags.zero_divisor_free:
        raise ConfigError(f"strong-interval mode needs a zero-divisor-free semiring, {base.name} is not")
    return IntervalSemiring(base, strong=strong)


def _target(cfg: RunConfig, declared: Semiring) -> Semiring:
    s = io.resolve_semiring(cfg.semiring) if cfg.semiring else declared
    if cfg.exact:
        s = io.with_exact(s)
    return _apply_mode(s, cfg.mode)


def load_matrix(path: str, cfg: RunConfig) -> Matrix:
    """Read a matrix or graph file, then apply ``--semiring``, ``--exact`` and ``--mode``."""
    text = Path(path).read_text()
    kind = io.sniff(text)
    if kind == "graph":
        g, declared = io.graph_from_text(text)
        s = _target(cfg, declared)
        if s is not declared:
            g, _ = io.graph_from_text(text, s.base if isinstance(s, IntervalSemiring) else s)
        A = from_graph(g, s.base if isinstance(s, IntervalSemiring) else s)
        return _lift(A, s)
    if kind != "matrix":
        raise ConfigError(f"{path}: expected a matrix or graph file, found {kind!r}")
    A = io.matrix_from_text(text)
    s = _target(cfg, A.semiring)
    return A if s == A.semiring else io.matrix_from_text(text, s)


def _lift(A: Matrix, s: Semiring) -> Matrix:
    if A.semiring == s:
        return A
    return Matrix(s, tuple(tuple(embed(x) for x in row) for row in A.entries))


def _semiring_list(cfg: RunConfig) -> list:
    if cfg.semiring:
        base = [io.resolve_semiring(cfg.semiring)]
    else:
        base = instances(NumericMode.EXACT if cfg.exact else NumericMode.FLOAT64)
        if cfg.mode == "strong-interval":
            # over the default list, skip instances the strong extension cannot take
            base = [s for s in base if s.flags.zero_divisor_free]
    if cfg.exact:
        base = [io.with_exact(s) for s in base]
    return [_apply_mode(s, cfg.mode) for s in base]


def _need(cfg: RunConfig, k: int, what: str) -> None:
    if len(cfg.inputs) < k:
        raise ConfigError(f"{cfg.command} needs {what}")


# -- commands -----------------------------------------------------------------
# Each returns (exit code, report text, result fields, result blocks).

def _closure(cfg):
    _need(cfg, 1, "a matrix or graph file")
    A = load_matrix(cfg.inputs[0], cfg)
    C = closure(A, backend=cfg.backend, allow_unchecked=cfg.allow_unchecked)
    fields = [("command", "closure"), ("semiring", A.semiring.name), ("n", A.rows), ("backend", cfg.backend)]
    report = f"closure of a {A.rows}x{A.rows} matrix over {A.semiring.name}\n" + _grid(C)
    return EXIT_OK, report, fields, {"closure": C}


def _solve(cfg):
    _need(cfg, 2, "the files A and B (and optionally X0)")
    A = load_matrix(cfg.inputs[0], cfg)
    B = load_matrix(cfg.inputs[1], cfg)
    X0 = load_matrix(cfg.inputs[2], cfg) if len(cfg.inputs) > 2 else None
    base = [("command", "solve"), ("semiring", A.semiring.name), ("n", A.rows)]
    try:
        rep = solve(A, B, X0=X0, max_iter=cfg.max_iter, force=cfg.allow_unchecked)
    except PrecheckFailed as exc:
        return EXIT_PRECHECK, f"precheck failed: {exc}", base + [("status", "PrecheckFailed")], {}
    except NotStabilized as exc:
        fields = base + [("status", "NotStabilized"), ("iterations", exc.iterations)]
        return EXIT_NOT_STABILIZED, f"not stabilized: {exc}", fields, {"last": exc.last}
    fields = base + [
        ("status", "ok"),
        ("iterations_used", rep.iterations_used),
        ("stabilized", str(rep.stabilized).lower()),
        ("precheck", rep.precheck.value),
        ("residual_ok", str(rep.residual_ok).lower()),
    ]
    report = (f"Bellman solve over {A.semiring.name}: stabilized after {rep.iterations_used} "
              f"iterations (precheck {rep.precheck.value}, residual {'ok' if rep.residual_ok else 'FAILED'})\n"
              + _grid(rep.solution))
    return EXIT_OK, report, fields, {"solution": rep.solution}


def _eig(cfg):
    _need(cfg, 1, "a matrix file")
    A = load_matrix(cfg.inputs[0], cfg)
    s = A.semiring
    if isinstance(s, IntervalSemiring):
        pair = eigen_interval(A)
        lam, V = pair.value, pair.vector
    else:
        lam = eigenvalue(A, method=cfg.method)
        V = eigenvector(A, lam)
    value = s.format(lam)
    fields = [("command", "eig"), ("semiring", s.name), ("n", A.rows), ("eigenvalue", value)]
    report = f"eigenvalue {value}\neigenvector\n" + _grid(V)
    return EXIT_OK, report, fields, {"eigenvector": V}


def _rho(cfg):
    _need(cfg, 1, "a matrix file")
    A = load_matrix(cfg.inputs[0], cfg)
    s = A.semiring
    base = s.base if isinstance(s, IntervalSemiring) else s
    r = rho(A)
    below = base.leq(r, base.one)
    fields = [("command", "rho"), ("semiring", s.name), ("rho", base.format(r)),
              ("rho_leq_one", str(below).lower())]
    return EXIT_OK, f"rho = {base.format(r)} ({'<=' if below else 'not <='} unity)", fields, {}


def _blocks(cfg):
    _need(cfg, 1, "a matrix file")
    A = load_matrix(cfg.inputs[0], cfg)
    bf = block_form(A)
    perm = " ".join(map(str, bf.permutation))
    blocks = ";".join(",".join(map(str, b)) for b in bf.blocks)
    fields = [("command", "blocks"), ("semiring", A.semiring.name), ("permutation", perm),
              ("block_count", len(bf.blocks)), ("blocks", blocks)]
    report = (f"{len(bf.blocks)} strongly connected blocks: {blocks}\n"
              f"permutation {perm}\n" + _grid(bf.permuted()))
    return EXIT_OK, report, fields, {"permuted": bf.permuted()}


def _legendre(cfg):
    _need(cfg, 1, "a grid file")
    f = io.parse_grid(cfg.inputs[0])
    xis = [tuple(x) for x in cfg.xi] if cfg.xi else list(f.points)
    g = legendre(f, xis)
    s = RMax(mode=NumericMode.FLOAT64)
    table = Matrix(s, tuple(p + (v,) for p, v in zip(g.points, g.values)))
    fields = [("command", "legendre"), ("dim", f.dim), ("points", len(f)), ("xi_count", len(g))]
    lines = [f"transform of {len(f)} grid points in dimension {f.dim}", "xi -> value"]
    lines += [f"{' '.join(repr(c) for c in p)} -> {s.format(v)}" for p, v in zip(g.points, g.values)]
    return EXIT_OK, "\n".join(lines), fields, {"transform": table}


def _dequant_demo(cfg):
    w1, w2 = cfg.w
    rows = convergence_table(w1, w2, cfg.hs)
    fields = [("command", "dequant-demo"), ("w1", repr(w1)), ("w2", repr(w2))]
    lines = [f"w1 = {w1!r}, w2 = {w2!r}, max = {max(w1, w2)!r}",
             f"{'h':>10} {'w1 (+)_h w2':>22} {'gap':>22} {'h ln 2':>22}  ok"]
    for i, (h, v, gap, bound) in enumerate(rows):
        ok = 0 <= gap <= bound
        fields.append((f"row.{i}", f"{h!r} {v!r} {gap!r} {bound!r} {str(ok).lower()}"))
        lines.append(f"{h:>10g} {v:>22.15g} {gap:>22.6e} {bound:>22.6e}  {'yes' if ok else 'NO'}")
    return EXIT_OK, "\n".join(lines), fields, {}


def _check_axioms(cfg):
    fields = [("command", "check-axioms"), ("samples", cfg.samples), ("seed", cfg.seed)]
    reports = []
    for s in _semiring_list(cfg):
        r = check_axioms(s, sample_count=cfg.samples, rng_seed=cfg.seed)
        reports.append(r.summary())
        fields.append((f"{s.name}.passed", str(r.passed).lower()))
        for law, res in r.laws.items():
            fields.append((f"{s.name}.{law}", f"{res.failures}/{res.checked}"))
    return EXIT_OK, "\n".join(reports), fields, {}


_HANDLERS = {
    "closure": _closure,
    "solve": _solve,
    "eig": _eig,
    "rho": _rho,
    "blocks": _blocks,
    "legendre": _legendre,
    "dequant-demo": _dequant_demo,
    "check-axioms": _check_axioms,
}


def _grid(A: Matrix) -> str:
    cells = [[A.semiring.format(x) for x in row] for row in A.entries]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  " + " ".join(c.rjust(width) for c in row) for row in cells)


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    """Execute one subcommand; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        code, report, fields, blocks = _HANDLERS[cfg.command](cfg)
    except (MaxPlusError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ERROR
    print(report, file=stdout)
    if cfg.out:
        fields = fields + [("exit_code", code)]
        Path(cfg.out).write_text(io.format_result(fields, blocks))
    return code


def _floats(text: str) -> tuple:
    return tuple(float(t) for t in text.replace(",", " ").split())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxplus", description="Idempotent (max-plus) linear algebra toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--semiring", help="selection string, e.g. rmax, rmin@exact, prod:rmax,bool")
    common.add_argument("--mode", choices=MODES, default="scalar")
    common.add_argument("--exact", action="store_true", help="use exact rational arithmetic")
    common.add_argument("--out", help="write the machine-readable result here")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-iter", type=int)
    common.add_argument("--allow-unchecked", action="store_true",
                        help="skip the semi-definiteness or rho precheck")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("closure", parents=[common], help="Kleene closure A* of a matrix or graph")
    c.add_argument("input")
    c.add_argument("--backend", choices=("squaring", "kleene"), default="squaring")

    c = sub.add_parser("solve", parents=[common], help="solve X = AX + B by iteration")
    c.add_argument("A")
    c.add_argument("B")
    c.add_argument("X0", nargs="?")

    c = sub.add_parser("eig", parents=[common], help="eigenvalue and eigenvector")
    c.add_argument("input")
    c.add_argument("--method", choices=("auto", "karp", "cycles", "invariant"), default="auto")

    for name, text in (("rho", "spectral bound rho"), ("blocks", "block triangular form")):
        sub.add_parser(name, parents=[common], help=text).add_argument("input")

    c = sub.add_parser("legendre", parents=[common], help="max-plus Fourier-Legendre transform of a grid")
    c.add_argument("input")
    c.add_argument("--xi", action="append", default=[],
                   help="evaluation point, coordinates separated by commas; repeatable")

    c = sub.add_parser("dequant-demo", parents=[common], help="convergence of the smoothed maximum")
    c.add_argument("--w", nargs=2, type=float, default=[3.0, 5.0], metavar=("W1", "W2"))
    c.add_argument("--h", default="1,0.5,0.1,0.01,0.001", help="comma-separated list of h values")

    c = sub.add_parser("check-axioms", parents=[common], help="randomized semiring law check")
    c.add_argument("--samples", type=int, default=1000)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.command == "solve":
        inputs = tuple(x for x in (ns.A, ns.B, ns.X0) if x)
    else:
        inputs = (ns.input,) if getattr(ns, "input", None) else ()
    return RunConfig(
        command=ns.command,
        inputs=inputs,
        semiring=ns.semiring,
        mode=ns.mode,
        out=ns.out,
        max_iter=ns.max_iter,
        seed=ns.seed,
        exact=ns.exact,
        allow_unchecked=ns.allow_unchecked,
        backend=getattr(ns, "backend", "squaring"),
        method=getattr(ns, "method", "auto"),
        samples=getattr(ns, "samples", 1000),
        xi=tuple(_floats(x) for x in getattr(ns, "xi", [])),
        hs=_floats(getattr(ns, "h", "1,0.5,0.1,0.01,0.001")),
        w=tuple(getattr(ns, "w", (3.0, 5.0))),
    )


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
