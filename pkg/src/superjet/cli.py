"""Batch verification driver: ``superjet <command> [--json] [--fixture PATH]``.

Exit codes: 0 when every check passes, 1 on a failed check or fixture mismatch,
2 on usage errors (unknown command, bad option).  JSON on stdout is the stable
contract; wall time goes to stderr so the body stays byte-identical across runs.
"""
from __future__ import annotations

import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

import click

from .scalar import Scalar

GRADINGS = ("odd", "mixed")


@dataclass
class CheckEntry:
    name: str
    exact: bool
    expected: object = None
    got: object = None

    def as_dict(self) -> dict:
        return {"name": self.name, "exact": self.exact, "expected": jsonable(self.expected),
                "got": jsonable(self.got)}


@dataclass
class Report:
    command: str
    checks: list[CheckEntry] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if all(c.exact for c in self.checks) else "fail"

    def body(self) -> dict:
        return {"command": self.command, "status": self.status, "checks": [c.as_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.body(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            if c.exact:
                lines.append(f"  ok    {c.name}")
            else:
                lines.append(f"  FAIL  {c.name}: expected {jsonable(c.expected)!r}, got {jsonable(c.got)!r}")
        passed = sum(c.exact for c in self.checks)
        lines.append(f"{self.command}: {self.status} ({passed}/{len(self.checks)} checks, {self.wall_time:.1f}s)")
        return "\n".join(lines) + "\n"


def jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (Scalar, Fraction, float)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: _sort_key(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=str)
    return str(x)


def _sort_key(k):
    return (0, k, "") if isinstance(k, int) else (1, 0, str(k))


def _entries(raw) -> list[CheckEntry]:
    out = []
    for r in raw:
        if hasattr(r, "as_dict"):  # clifford.CheckResult
            out.append(CheckEntry(r.name, bool(r.ok), r.expected, r.got))
        else:
            name, ok, expected, got = r
            out.append(CheckEntry(name, bool(ok), expected, got))
    return out


# --- check producers (module-level so they can run in worker processes) -----------------------

def checks_verify_f4(**_) -> list[CheckEntry]:
    from . import clifford, f4
    spin = [CheckEntry(f"spinor model: {c.name}", c.exact, c.expected, c.got)
            for c in _entries(clifford.clifford_suite())]
    return spin + _entries(f4.f4_summary())


def checks_root_systems(**_) -> list[CheckEntry]:
    from . import rootkit
    return _entries(rootkit.verify_root_system())


def checks_gradings(grading: str | None = None, **_) -> list[CheckEntry]:
    from . import f4
    from .spencer import graded_algebra
    want = {
        "odd": {-2: (1, 0), -1: (0, 8), 0: (22, 0), 1: (0, 8), 2: (1, 0)},
        "mixed": {-2: (1, 0), -1: (6, 4), 0: (10, 8), 1: (6, 4), 2: (1, 0)},
    }
    res = []
    for g in ([grading] if grading else GRADINGS):
        L = graded_algebra(g)
        got = L.dims_by_degree()
        res.append((f"{g} contact grading dims", got == want[g], want[g], got))
        bad = f4.check_degrees(L)
        res.append((f"brackets respect the {g} grading", not bad, [], bad[:3]))
        ok = f4.bracket_generation_ok(L)
        res.append((f"[g-1, g-1] = g-2 ({g})", ok, True, ok))
        ok = f4.transitivity_ok(L)
        res.append((f"transitivity ({g})", ok, True, ok))
    return _entries(res)


def checks_spencer(grading: str | None = None, degree: int | None = None, **_) -> list[CheckEntry]:
    from . import spencer
    degrees = [degree] if degree is not None else range(0, 6)
    res = []
    for g in ([grading] if grading else GRADINGS):
        res += spencer.spencer_checks(g, degrees)
    return _entries(res)


def checks_cubic_identity(**_) -> list[CheckEntry]:
    from . import cubicforms
    return _entries(cubicforms.cubicforms_summary())


def checks_verify_2pde(**_) -> list[CheckEntry]:
    from . import pdesym
    return _entries(pdesym.verify_2pde())


def checks_verify_3pde(**_) -> list[CheckEntry]:
    from . import pdesym
    return _entries(pdesym.verify_3pde())


def checks_quartic(**_) -> list[CheckEntry]:
    from . import pdesym
    return _entries(pdesym.quartic_checks())


def checks_flag_growth(**_) -> list[CheckEntry]:
    from . import pdesym
    fl = pdesym.flag_report()
    growth = [list(g) for g in fl["growth"]]
    want = [[3, 1], [3, 3], [0, 3], [0, 1], [1, 0]]
    ranks = [list(r) for r in fl["ranks"]]
    want_ranks = [[3, 1], [6, 4], [6, 7], [6, 8], [7, 8]]
    res = [("derived flag growth", growth == want, want, growth),
           ("cumulative ranks (7|8) = full tangent space", ranks == want_ranks, want_ranks, ranks)]
    res += [(name, ok, True, ok) for name, ok in fl["checks"].items()]
    return _entries(res)


def checks_solution_space(**_) -> list[CheckEntry]:
    from . import pdesym
    return _entries(pdesym.solution_space_checks())


PRODUCERS: dict[str, Callable[..., list[CheckEntry]]] = {
    "verify-f4": checks_verify_f4,
    "root-systems": checks_root_systems,
    "gradings": checks_gradings,
    "spencer": checks_spencer,
    "cubic-identity": checks_cubic_identity,
    "verify-2pde": checks_verify_2pde,
    "verify-3pde": checks_verify_3pde,
    "quartic": checks_quartic,
    "flag-growth": checks_flag_growth,
    "solution-space": checks_solution_space,
}
# verify-3pde already contains the quartic and flag checks
ALL_ORDER = ("verify-f4", "root-systems", "gradings", "spencer", "cubic-identity",
             "verify-2pde", "verify-3pde", "solution-space")


def thread_count() -> int:
    raw = os.environ.get("SUPERJET_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise click.UsageError(f"SUPERJET_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise click.UsageError("SUPERJET_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def _run_one(name: str, opts: dict) -> list[CheckEntry]:
    return PRODUCERS[name](**opts)


def run(command: str, **opts) -> Report:
    """Run one command (or ``all``) and return its report; raises KeyError for unknown commands."""
    start = time.perf_counter()
    if command == "all":
        names = ALL_ORDER
        workers = min(thread_count(), len(names))
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_run_one, names, [opts] * len(names)))
        else:
            parts = [_run_one(n, opts) for n in names]
        checks = [CheckEntry(f"{n}: {c.name}", c.exact, c.expected, c.got) for n, p in zip(names, parts) for c in p]
    else:
        checks = PRODUCERS[command](**opts)
    return Report(command, checks, time.perf_counter() - start)


def compare_fixture(report: Report, path: Path) -> tuple[bool, str]:
    """Write the fixture if it is missing, otherwise compare byte-for-byte."""
    text = report.to_json()
    if not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        return True, f"fixture written to {path}"
    if path.read_text() == text:
        return True, f"fixture {path} matches"
    return False, f"fixture {path} differs from this run"


def _emit(report: Report, as_json: bool, fixture: str | None) -> None:
    out = report.to_json() if as_json else report.to_text()
    click.echo(out, nl=False)
    click.echo(f"wall time: {report.wall_time:.2f}s", err=True)
    ok = report.status == "pass"
    if fixture:
        same, msg = compare_fixture(report, Path(fixture))
        click.echo(msg, err=True)
        ok = ok and same
    sys.exit(0 if ok else 1)


_common = [
    click.option("--json", "as_json", is_flag=True, help="Emit the JSON report on stdout."),
    click.option("--fixture", type=click.Path(dir_okay=False), default=None,
                 help="Write the JSON report here if missing, else compare against it."),
]
_grading = click.option("--grading", type=click.Choice(GRADINGS), default=None,
                        help="Restrict to one contact grading (default: both).")
_degree = click.option("--degree", type=click.IntRange(0, 10), default=None,
                       help="Restrict to one Z-degree d.")


def _with(*decorators):
    def wrap(fn):
        for d in reversed(decorators):
            fn = d(fn)
        return fn
    return wrap


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Exact verification reports for F(4) contact geometry."""


def _register(name: str, help_text: str, grading: bool = False, degree: bool = False) -> None:
    decos = list(_common) + ([_grading] if grading else []) + ([_degree] if degree else [])

    @main.command(name=name, help=help_text)
    @_with(*decos)
    def cmd(as_json: bool, fixture: str | None, **opts) -> None:
        opts = {k: v for k, v in opts.items() if v is not None}
        _emit(run(name, **opts), as_json, fixture)


_register("verify-f4", "Spinor model checks, then F(4): dimension, super-Jacobi on all triples, gradings, centralizers.")
_register("root-systems", "Odd reflections, positive roots, Cartan matrices, parabolic gradings.")
_register("gradings", "Graded dimensions and transitivity for the odd and mixed contact gradings.", grading=True)
_register("spencer", "Spencer cohomology H^(d,0) and H^(d,1) with d^2 = 0.", grading=True, degree=True)
_register("cubic-identity", "Cubic form identity, invariant cubics, osculation of the second-order system.")
_register("verify-2pde", "Symmetries of the second-order system (mixed grading).")
_register("verify-3pde", "Incidence pipeline, symmetries and isomorphism witness (odd grading).")
_register("quartic", "Conformal quartic preserved by exactly the symmetry span.")
_register("flag-growth", "Derived flag and Cauchy characteristics of the incidence distribution.")
_register("solution-space", "General solution superspace of the third-order system.")
_register("all", "Every command above, in a fixed order.", grading=True, degree=True)


if __name__ == "__main__":
    main()
