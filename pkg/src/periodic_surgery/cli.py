"""Command-line front end.

Exit codes: 0 clean / no obstruction, 1 obstruction or verification
failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .diagram import (
    DiagramInconsistencyError,
    InvalidTangleError,
    SeamTangle,
    TangleFormatError,
    block_structure,
    is_orbitally_separated,
    is_strongly_periodic,
    lift,
    linking_matrix,
    validate,
)
from .homology import (
    FramedLinkPresentation,
    InvalidPresentationError,
    Verdict,
    first_homology,
    involution_obstruction,
    involution_rank_check,
    mod_p_rank,
    odd_prime_obstruction,
)
from .linalg import IntMatrix, InvalidModulusError, require_prime
from .sweeps import DEFAULT_SEED, SUITES

EXIT_OK, EXIT_FOUND, EXIT_INVALID = 0, 1, 2
DEFAULT_PRIMES = (2, 3, 5, 7)
SUITE_DEFAULT_BOUND = {"lemma2.6": 5, "lemma2.7": 7, "thm2.2-cases": 25}


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Optional[str] = None
    prime: Optional[int] = None
    format: str = "text"
    bound: Optional[int] = None
    seed: int = DEFAULT_SEED
    samples: Optional[int] = None
    include_axis: bool = False
    axis_framing: Optional[int] = None
    include_p2: bool = False

    def __post_init__(self):
        if self.prime is not None:
            require_prime(self.prime)
        if self.bound is not None and self.bound < 3:
            raise InputError(f"bound must be >= 3, got {self.bound}")
        if self.format not in ("text", "json"):
            raise InputError(f"unknown format {self.format!r}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def parse_matrix_text(text: str) -> IntMatrix:
    """Either JSON (``{"matrix": [[...]]}`` or a bare list) or whitespace rows."""
    stripped = text.strip()
    if stripped.startswith(("{", "[")):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from exc
        rows = data.get("matrix") if isinstance(data, dict) else data
        if not isinstance(rows, list):
            raise InputError('expected {"matrix": [[int, ...], ...]}')
        errors = []
        for i, r in enumerate(rows, 1):
            if not isinstance(r, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in r):
                errors.append(f"row {i}: entries must be integers")
            elif len(r) != len(rows):
                errors.append(f"row {i}: has {len(r)} entries, expected {len(rows)}")
        if errors:
            raise InputError("; ".join(errors))
        return IntMatrix.from_rows(rows, cols=len(rows))

    rows, lines, errors = [], [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.replace(",", " ").split()])
            lines.append(lineno)
        except ValueError:
            errors.append(f"line {lineno}: non-integer entry")
    for lineno, r in zip(lines, rows):
        if len(r) != len(rows):
            errors.append(f"line {lineno}: has {len(r)} entries, expected {len(rows)}")
    if errors:
        raise InputError("; ".join(errors))
    return IntMatrix.from_rows(rows, cols=len(rows))


def load_presentation(path: str) -> FramedLinkPresentation:
    m = parse_matrix_text(_read(path))
    if not m.is_symmetric():
        bad = next((i, j) for i in range(m.rows) for j in range(m.cols) if m[i, j] != m[j, i])
        raise InputError(f"matrix is not symmetric: entry ({bad[0] + 1},{bad[1] + 1}) != ({bad[1] + 1},{bad[0] + 1})")
    return FramedLinkPresentation(m)


def _primes(extra: Optional[int]) -> list[int]:
    ps = list(DEFAULT_PRIMES)
    if extra is not None and extra not in ps:
        ps.append(extra)
    return ps


def homology_report(matrix: IntMatrix, extra_prime: Optional[int] = None) -> dict:
    g = first_homology(matrix)
    out = g.to_dict()
    out["primary_form"] = g.primary_str()
    out["mod_p_ranks"] = {str(p): mod_p_rank(matrix, p) for p in _primes(extra_prime)}
    return out


def render_homology(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2, sort_keys=True)
    lines = [
        f"H1 = {rep['group']}",
        f"free rank: {rep['free_rank']}",
        "invariant factors: " + (" ".join(map(str, rep["invariant_factors"])) or "(none)"),
        f"primary decomposition: {rep['primary_form']}",
    ]
    lines += [f"mod-{p} rank: {r}" for p, r in rep["mod_p_ranks"].items()]
    return "\n".join(lines)


def lift_report(t: SeamTangle, p: int, include_axis: bool = False, axis_framing: Optional[int] = None) -> dict:
    sp = is_strongly_periodic(t, p)
    d = lift(t, p, include_axis=include_axis, axis_framing=axis_framing)
    a = linking_matrix(d)
    rep = {
        "p": p,
        "strongly_periodic": sp.strongly_periodic,
        "windings": sp.windings,
        "components": d.labels,
        "matrix": a.to_rows(),
    }
    if sp:
        core = a if not include_axis else a.submatrix(range(a.rows - 1), range(a.cols - 1))
        rep["blocks"] = block_structure(d, core).to_dict()
        rep["orbitally_separated"] = {
            "quotient_split": is_orbitally_separated(t, p),
            "lifted_off_diagonal_zero": rep["blocks"]["off_diagonal_zero"],
        }
    return rep


def render_lift(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2, sort_keys=True)
    p = rep["p"]
    lines = []
    if rep["strongly_periodic"]:
        lines.append(f"strongly {p}-periodic")
    else:
        bad = [(c, w) for c, w in rep["windings"].items() if w % p]
        lines.append("not strongly periodic (" + ", ".join(f"winding {w % p} mod {p}" for _, w in bad) + ")")
    for c, w in rep["windings"].items():
        lines.append(f"  component {c}: winding {w}")
    lines.append("lifted components: " + " ".join(rep["components"]))
    lines.append("linking matrix:")
    width = max((len(str(x)) for r in rep["matrix"] for x in r), default=1)
    lines += ["  " + " ".join(str(x).rjust(width) for x in r) for r in rep["matrix"]] or ["  (empty)"]
    if "blocks" in rep:
        b = rep["blocks"]
        lines.append(
            f"blocks ({p} x {p}, orbits: {b['orbits']}): "
            + ("all circulant" if b["all_circulant"] else f"non-circulant blocks {b['non_circulant']}")
            + ("; diagonal blocks symmetric" if b["diagonal_symmetric"] else "; diagonal blocks NOT symmetric")
        )
        o = rep["orbitally_separated"]
        lines.append(
            "orbitally separated: " + ("yes" if o["quotient_split"] else "no")
            + " (lifted off-diagonal blocks " + ("zero" if o["lifted_off_diagonal_zero"] else "nonzero") + ")"
        )
    return "\n".join(lines)


def check_periodic(pres: FramedLinkPresentation, p: int) -> list:
    if p == 2:
        return [involution_obstruction(pres), involution_rank_check(pres)]
    return [odd_prime_obstruction(pres, p)]


def render_verdicts(verdicts, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([v.to_dict() for v in verdicts], indent=2, sort_keys=True)
    lines = []
    for v in verdicts:
        lines.append(f"{v.rule}: {v.verdict.value}")
        c = v.certificate
        if "statement" in c:
            lines.append(f"  {c['statement']}")
        if "group" in c:
            lines.append(
                f"  H1 = {c['group']} = {c['primary']}; Z/2 terms {c['z2_count']}, Z/4 terms {c['z4_count']}, "
                f"Z/8 terms {c['z8_count']}, mod-2 rank = {c['mod_2_rank']}"
            )
        if "reason" in c:
            lines.append(f"  {c['reason']}")
    return "\n".join(lines)


def run_verify(suite: str, cfg: RunConfig):
    bound = cfg.bound if cfg.bound is not None else SUITE_DEFAULT_BOUND.get(suite)
    fn = SUITES[suite]
    if suite == "lemma2.6":
        return fn(max_n=bound, seed=cfg.seed)
    if suite == "lemma2.7":
        return fn(bound=bound, include_two=cfg.include_p2)
    if suite == "thm2.2-cases":
        return fn(bound=bound)
    kw = {"seed": cfg.seed}
    if cfg.samples is not None:
        kw["samples"] = cfg.samples
    return fn(**kw)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="periodic-surgery", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    h = sub.add_parser("homology", help="H1 of the manifold presented by a linking matrix")
    h.add_argument("input", help="matrix file (JSON or whitespace rows), '-' for stdin")
    h.add_argument("--prime", type=int, help="extra prime for the mod-p rank table")
    common(h)

    lf = sub.add_parser("lift", help="lift a seam tangle to its p-periodic link")
    lf.add_argument("input", help="tangle JSON file, '-' for stdin")
    lf.add_argument("--prime", type=int, required=True)
    lf.add_argument("--axis", type=int, metavar="FRAMING", help="include the rotation axis with this framing")
    common(lf)

    cp = sub.add_parser("check-periodic", help="run the periodicity obstructions on a presentation")
    cp.add_argument("input")
    cp.add_argument("--prime", type=int, required=True)
    common(cp)

    v = sub.add_parser("verify", help="run a verification sweep")
    v.add_argument("--suite", required=True)
    v.add_argument("--bound", type=int)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--samples", type=int, help="number of random samples for seeded suites")
    v.add_argument("--include-p2", action="store_true", help="also show the p=2 counterexample (lemma2.7)")
    common(v)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "verify" and args.suite not in SUITES:
            print(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}", file=sys.stderr)
            return EXIT_INVALID
        cfg = RunConfig(
            command=args.command,
            input=getattr(args, "input", None),
            prime=getattr(args, "prime", None),
            format=args.format,
            bound=getattr(args, "bound", None),
            seed=getattr(args, "seed", DEFAULT_SEED),
            samples=getattr(args, "samples", None),
            include_axis=getattr(args, "axis", None) is not None,
            axis_framing=getattr(args, "axis", None),
            include_p2=getattr(args, "include_p2", False),
        )

        if cfg.command == "homology":
            pres = load_presentation(cfg.input)
            print(render_homology(homology_report(pres.matrix, cfg.prime), cfg.format), file=out)
            return EXIT_OK

        if cfg.command == "lift":
            try:
                t = SeamTangle.from_json(_read(cfg.input))
            except TangleFormatError as exc:
                raise InputError(str(exc)) from exc
            diags = validate(t)
            if diags:
                raise InputError("invalid tangle: " + "; ".join(diags))
            rep = lift_report(t, cfg.prime, cfg.include_axis, cfg.axis_framing)
            print(render_lift(rep, cfg.format), file=out)
            return EXIT_OK

        if cfg.command == "check-periodic":
            pres = load_presentation(cfg.input)
            verdicts = check_periodic(pres, cfg.prime)
            print(render_verdicts(verdicts, cfg.format), file=out)
            return EXIT_FOUND if any(v.verdict is Verdict.NOT_PERIODIC for v in verdicts) else EXIT_OK

        res = run_verify(args.suite, cfg)
        if cfg.format == "json":
            print(json.dumps(res.to_dict(), indent=2, sort_keys=True), file=out)
        else:
            print("\n".join(res.summary), file=out)
            if res.counterexample is not None:
                print(f"first counterexample: {json.dumps(res.counterexample)}", file=out)
        return EXIT_OK if res.ok else EXIT_FOUND

    except (InputError, InvalidModulusError, InvalidPresentationError, InvalidTangleError,
            DiagramInconsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
