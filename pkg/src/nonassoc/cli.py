"""Command-line front end.

Algebras are read from files in the canonical JSON format, or built in place
with ``builtin:KIND`` (see ``construct --help``); ``zmod:N`` denotes the ring
of integers modulo ``N`` where finite rings are accepted.

Exit codes: 0 when every asserted property holds, 1 when one fails, 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from importlib import resources
from typing import Any, Sequence

from .algebra import (
    AdditiveMap,
    Algebra,
    AlgebraError,
    AlgebraParseError,
    Element,
    load,
    power_ideal,
    to_json,
    verify_automorphism,
)
from .exactmath import FiniteField, Matrix, Subspace, parse_field

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: dict
    properties: list[dict] = dc_field(default_factory=list)
    result: Any = None
    text: list[str] = dc_field(default_factory=list)

    def add(self, anchor: str, ok: bool | None, detail: str) -> bool:
        status = "info" if ok is None else ("pass" if ok else "fail")
        self.properties.append({"anchor": anchor, "status": status, "detail": detail})
        return bool(ok) or ok is None

    def note(self, line: str) -> None:
        self.text.append(line)

    @property
    def exit(self) -> int:
        return EXIT_FAIL if any(p["status"] == "fail" for p in self.properties) else EXIT_OK

    def as_dict(self) -> dict:
        out = {"command": self.command, "inputs": self.inputs, "properties": self.properties, "exit": self.exit}
        if self.result is not None:
            out["result"] = self.result
        return out

    def render(self) -> str:
        lines = [f"{self.command}"] + list(self.text)
        for p in self.properties:
            lines.append(f"[{p['status'].upper()}] {p['anchor']}: {p['detail']}")
        return "\n".join(lines)


def load_schema() -> dict:
    return json.loads(resources.files("nonassoc").joinpath("report_schema.json").read_text(encoding="utf-8"))


# -- builtin constructions -----------------------------------------------------------


BUILTIN_KINDS = (
    "heisenberg", "two_dim_lie", "trivial", "truncated_poly", "null_quadratic", "matrix", "matrix_lie",
    "semidirect_heisenberg", "lambda_vector", "s_heisenberg", "local_s", "local_truncated", "ring2",
    "free3", "aff",
)


def build(kind: str, field_name: str = "Q", n: int = 1, p: int = 3, m: int = 2) -> Algebra:
    from . import constructions as C

    F = parse_field(field_name)
    if kind == "heisenberg":
        return C.heisenberg(F, n)
    if kind == "two_dim_lie":
        return C.two_dim_lie(F)
    if kind == "trivial":
        return C.trivial_mult(F, n)
    if kind == "truncated_poly":
        return C.truncated_poly(F, n)
    if kind == "null_quadratic":
        return C.null_quadratic(p, m)
    if kind in ("matrix", "matrix_lie"):
        return C.matrix_algebra(F, n, lie=kind == "matrix_lie")
    if kind == "semidirect_heisenberg":
        return C.semidirect_double(C.heisenberg(F, n))
    if kind == "lambda_vector":
        k = C.scalar_algebra(F)
        V = C.trivial_mult(F, n)
        return C.triangular(k, V, C.scalar_action(k, V))
    if kind == "s_heisenberg":
        return C.s_of(C.semidirect_double(C.heisenberg(F, n)))
    if kind == "local_s":
        return C.local_sum(F, C.s_of(C.semidirect_double(C.heisenberg(F, n))))
    if kind == "local_truncated":
        return C.local_sum(F, C.maximal_ideal_algebra(C.truncated_poly(F, max(n, 2))))
    if kind == "ring2":
        if not isinstance(F, FiniteField):
            raise UsageError("ring2 needs a finite field, e.g. --field 'GF(3^2)'")
        return C.ring2(F)
    if kind == "free3":
        return C.free_nilpotent_3(F)
    if kind == "aff":
        k = C.trivial_mult(F, 1)
        rho = C.BilinearAction.from_functions(k, k, lambda i, j: (F.one,), None)
        return C.semidirect_rho(k, k, rho)
    raise UsageError(f"unknown construction {kind!r}; choose from {', '.join(BUILTIN_KINDS)}")


def resolve_source(source: str, args) -> Any:
    """Path, ``builtin:KIND`` or ``zmod:N``."""
    if source.startswith("builtin:"):
        return build(source.split(":", 1)[1], args.field, args.n, args.p, args.m)
    if source.startswith("zmod:"):
        from .local_rings import IntegersMod

        try:
            return IntegersMod(int(source.split(":", 1)[1]))
        except ValueError as exc:
            raise UsageError(f"bad modulus in {source!r}") from exc
    try:
        return load(source)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {source}") from exc


def _need_algebra(obj) -> Algebra:
    if not isinstance(obj, Algebra):
        raise UsageError("this command needs an algebra, not a table ring")
    return obj


def parse_vectors(A: Algebra, text: str) -> list[tuple]:
    """``name1,name2`` (basis vectors), ``tag:NAME`` or a JSON list of coordinate lists."""
    text = text.strip()
    if text.startswith("tag:"):
        name = text[4:]
        if A.tag is None or name not in A.tag.subspaces:
            raise UsageError(f"algebra has no tagged subspace {name!r}")
        return list(A.tag.subspaces[name].basis)
    if text.startswith("["):
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad JSON vector list: {exc}") from exc
        out = []
        for r in rows:
            if len(r) != A.dim:
                raise UsageError(f"vector {r} must have {A.dim} coordinates")
            out.append(tuple(A.field.parse(str(c)) for c in r))
        return out
    names = [s for s in text.split(",") if s]
    try:
        return [A.gen(nm).coords for nm in names]
    except AlgebraError as exc:
        raise UsageError(str(exc)) from exc


def parse_matrix(A: Algebra, text: str, nrows: int, ncols: int) -> Matrix:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad JSON matrix: {exc}") from exc
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise UsageError(f"matrix must be {nrows}x{ncols}")
    return Matrix(A.field, [[A.field.parse(str(c)) for c in r] for r in rows], ncols)


def fmt_subspace(A: Algebra, S: Subspace) -> list[str]:
    return [repr(Element(A, v)) if len(v) == A.dim else str(v) for v in S.basis]


def algebra_with_tags(A: Algebra) -> dict:
    obj = to_json(A)
    tags: dict[str, Any] = {}
    if A.tag is not None:
        tags["kind"] = A.tag.kind
        subs = {}
        for name, S in A.tag.subspaces.items():
            subs[name] = [[A.field.format(c) for c in v] for v in S.basis]
        tags["subspaces"] = subs
    if A.report().lie and "center" not in tags.get("subspaces", {}):
        from .invariants import center_lie

        tags.setdefault("subspaces", {})["center"] = [[A.field.format(c) for c in v] for v in center_lie(A).basis]
    obj["tags"] = tags
    return obj


# -- commands ------------------------------------------------------------------------


def cmd_construct(args) -> Report:
    A = build(args.kind, args.field, args.n, args.p, args.m)
    rep = Report("construct", {"kind": args.kind, "field": args.field, "n": args.n, "p": args.p, "m": args.m})
    obj = algebra_with_tags(A)
    rep.result = obj
    rep.add("construction", True, f"{args.kind}: dim {A.dim} over {A.field!r}")
    return rep


AXIOMS = ("commutative", "associative", "lie", "two_step_nilpotent", "unital")


def cmd_check(args) -> Report:
    A = _need_algebra(resolve_source(args.algebra, args))
    rep = Report("check", {"algebra": args.algebra})
    r = A.report()
    flags = {
        "commutative": r.commutative,
        "associative": r.associative,
        "lie": r.lie,
        "two_step_nilpotent": r.two_step_nilpotent,
        "unital": r.unit is not None,
    }
    if args.expect:
        expected = [e for e in args.expect.split(",") if e]
        for e in expected:
            if e not in AXIOMS:
                raise UsageError(f"unknown axiom {e!r}; choose from {', '.join(AXIOMS)}")
    else:
        # an alternating tensor is asserted to be a Lie bracket
        expected = ["lie"] if "alternating" not in r.violations else []
    for name, value in flags.items():
        key = {"lie": "jacobi" if "alternating" not in r.violations else "alternating", "unital": None}.get(name, name)
        viol = r.violations.get(key) if key else None
        detail = f"{name} = {value}"
        if viol is not None and not value:
            detail += f"; violated at basis {('element', 'pair', 'triple')[len(viol) - 1]} {tuple(A.basis_names[i] for i in viol)}"
        rep.add(f"axiom:{name}", value if name in expected else None, detail)
    rep.add("nilpotency-index", None, str(r.nilpotency_index))
    if r.unit is not None:
        rep.add("unit", None, repr(r.unit))
    rep.result = r.as_dict()
    return rep


def cmd_invariants(args) -> Report:
    from .invariants import annihilator, center_lie, derived_series, lower_central

    A = _need_algebra(resolve_source(args.algebra, args))
    rep = Report("invariants", {"algebra": args.algebra, "subspace": args.subspace})
    S = Subspace(A.field, A.dim, parse_vectors(A, args.subspace)) if args.subspace else None
    ann = annihilator(A, S)
    rep.add("two-sided-annihilator", None, f"dim {ann.dim}: {fmt_subspace(A, ann)}")
    result: dict[str, Any] = {"annihilator": fmt_subspace(A, ann)}
    r = A.report()
    if r.lie:
        z = center_lie(A)
        rep.add("center", z == annihilator(A), f"dim {z.dim}: {fmt_subspace(A, z)} (equals annihilator)")
        result["center"] = fmt_subspace(A, z)
        result["derived_series"] = [s.dim for s in derived_series(A)]
        result["lower_central_series"] = [s.dim for s in lower_central(A)]
        rep.add("derived-series", None, f"dims {result['derived_series']}")
        rep.add("lower-central-series", None, f"dims {result['lower_central_series']}")
    powers = [power_ideal(A, k, S).dim for k in range(1, A.dim + 2)]
    rep.add("power-ideals", None, f"left-normed dims {powers}")
    rep.add("nilpotency-index", None, str(r.nilpotency_index))
    result["power_ideal_dims"] = powers
    rep.result = result
    return rep


def cmd_chain(args) -> Report:
    from .invariants import analysis_chain, check_triangular_annihilator

    A = _need_algebra(resolve_source(args.algebra, args))
    rep = Report("chain", {"algebra": args.algebra})
    try:
        tri = check_triangular_annihilator(A)
    except AlgebraError as exc:
        raise UsageError(f"{exc} (use a builtin triangular construction)") from exc
    rep.add("triangular-annihilator-hypothesis", None, f"ann(R) = ann_R(M) = ann_R(ann(M)): {tri.hypothesis}")
    rep.add(
        "triangular-annihilator-formula",
        tri.agree if tri.hypothesis else None,
        f"formula dim {tri.formula.dim}, direct dim {tri.brute_force.dim}, equal: {tri.agree}",
    )
    chain = analysis_chain(A)
    for line in chain.summary():
        rep.note(line)
    rep.add("chain-kernel-f1", chain.kernel_f1_ok, f"dim Λ1 = {chain.lambda1.dim}")
    rep.add("chain-kernel-f2", chain.kernel_f2_ok, f"dim ann(Λ) = {chain.ann.dim}")
    rep.add("chain-images-in-module", chain.images_in_M, "all images lie in {0} x M")
    if chain.s_case is not None:
        s = chain.s_case
        rep.add("s-chain-single-z-property", None, str(s.single_z_property))
        rep.add("s-chain-kernel-S1", s.S1 == s.expected_S1, f"dim S1 = {s.S1.dim}")
        rep.add("s-chain-kernel-S2", s.S2 == s.annS, f"dim S2 = {s.S2.dim}, dim ann(S) = {s.annS.dim}")
    rep.result = {"summary": chain.summary()}
    return rep


def cmd_derivations(args) -> Report:
    from .derivations import as_matrix, derivation_space, derivations_vanishing_on, is_derivation

    A = _need_algebra(resolve_source(args.algebra, args))
    rep = Report("derivations", {"algebra": args.algebra, "vanish": args.vanish})
    if args.vanish:
        D = derivations_vanishing_on(A, parse_vectors(A, args.vanish))
    else:
        D = derivation_space(A)
    mats = [as_matrix(A, v) for v in D.basis]
    rep.add("derivation-space", all(is_derivation(A, M) for M in mats), f"dimension {D.dim}")
    for M in mats:
        rep.note(repr(M))
    rep.result = {"dimension": D.dim, "basis": [[[A.field.format(c) for c in row] for row in M.rows] for M in mats]}
    return rep


def _build_automorphism(A: Algebra, args) -> AdditiveMap:
    from . import automorphisms as Au
    from .constructions import triangular_parts

    if args.delta:
        parts = triangular_parts(A)
        R, M = parts["R"], parts["M"]
        if args.delta == "hat":
            from .derivations import hat_lift_map

            return Au.lift_aut_triangular(A, hat_lift_map(R, M))
        if args.delta.startswith("scalar:"):
            from .derivations import scalar_to_delta

            return Au.lift_aut_triangular(A, scalar_to_delta(A, M.gen(args.delta[7:]).coords))
        if args.delta == "outer":
            return Au.lift_aut_triangular(A, Au.linear_delta(A, Au.heisenberg_outer_derivation(R)))
        return Au.lift_aut_triangular(A, Au.linear_delta(A, parse_matrix(A, args.delta, M.dim, R.dim)))
    if A.tag is None or A.tag.kind != "LocalSum":
        raise UsageError("give --delta for a triangular ring, or use a local-sum ring with --g/--f/--pair")
    m = A.tag.parts["M"]
    if args.g:
        return Au.lift_aut_local_g(A, parse_matrix(A, args.g, m.dim, m.dim))
    if args.f:
        Q, _ = Au.quotient_by_ann(A)
        return Au.lift_aut_local_f(A, parse_matrix(A, args.f, m.dim, Q.dim))
    if args.pair:
        try:
            pairs = json.loads(args.pair)
            fixed = json.loads(args.fixed) if args.fixed else []
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad JSON: {exc}") from exc
        conv = lambda v: tuple(A.field.parse(str(c)) for c in v)  # noqa: E731
        sigma = Au.build_fixing_automorphism(A, [conv(v) for v in fixed], [(conv(b), conv(bp)) for b, bp in pairs])
        if sigma is None:
            raise Au.HypothesisError("basis extension", "independence preconditions fail; no automorphism built")
        return sigma
    raise UsageError("one of --delta, --g, --f, --pair is required")


def _aut_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--delta", help="hat | scalar:NAME | outer | JSON matrix M x R")
    p.add_argument("--g", help="JSON matrix of g on m")
    p.add_argument("--f", help="JSON matrix of f: m/ann(m) -> m")
    p.add_argument("--pair", help="JSON list of [b, b'] coordinate pairs")
    p.add_argument("--fixed", help="JSON list of fixed elements")


def cmd_lift_aut(args) -> Report:
    from .automorphisms import HypothesisError

    A = _need_algebra(resolve_source(args.algebra, args))
    rep = Report("lift-aut", {"algebra": args.algebra, "delta": args.delta, "g": args.g, "f": args.f, "pair": args.pair})
    try:
        sigma = _build_automorphism(A, args)
    except HypothesisError as exc:
        rep.add(f"hypothesis:{exc.clause}", False, exc.detail or str(exc))
        return rep
    rep.add("automorphism", verify_automorphism(sigma), "basis-pair multiplicativity and bijectivity")
    rep.note(f"linear part {sigma.matrix!r}")
    if sigma.dmatrix is not None:
        rep.note(f"derivative part {sigma.dmatrix!r}")
    rep.result = {
        "matrix": [[A.field.format(c) for c in row] for row in sigma.matrix.rows],
        "derivative_part": None if sigma.dmatrix is None else [[A.field.format(c) for c in row] for row in sigma.dmatrix.rows],
    }
    return rep


def cmd_orbit(args) -> Report:
    from .automorphisms import HypothesisError, orbit
    from .invariants import annihilator, center_lie

    A = _need_algebra(resolve_source(args.algebra, args))
    rep = Report("orbit", {"algebra": args.algebra, "element": args.element, "modulo": args.modulo, "n": args.steps})
    try:
        sigma = _build_automorphism(A, args)
    except HypothesisError as exc:
        rep.add(f"hypothesis:{exc.clause}", False, exc.detail or str(exc))
        return rep
    vecs = parse_vectors(A, args.element)
    if len(vecs) != 1:
        raise UsageError("--element must name exactly one element")
    a = Element(A, vecs[0])
    modulo = {"zero": lambda: Subspace.zero(A.field, A.dim), "ann": lambda: annihilator(A), "center": lambda: center_lie(A)}
    if args.modulo not in modulo:
        raise UsageError("--modulo must be zero, ann or center")
    r = orbit(sigma, a, modulo[args.modulo](), args.steps)
    rep.add("orbit", None, f"{r.distinct_cosets} distinct cosets over {args.steps} steps, period {r.periodic}")
    rep.result = r.as_dict()
    return rep


def cmd_witness(args) -> Report:
    from .automorphisms import witness

    rep = Report("witness", {"kind": args.kind, "char": args.char, "n": args.n_steps})
    if args.char != 0 and args.char not in (3, 5, 7, 11, 13):
        if args.char == 2 or args.char < 0:
            raise UsageError("characteristic must be 0 or an odd prime")
    w = witness(args.kind, args.char, args.n_steps)
    for line in w.lines()[1:-1]:
        rep.note(line)
    rep.add(f"witness:{args.kind}", w.passed, f"expected {w.expected}; got {w.distinct_cosets} distinct cosets" + (f", period {w.period}" if w.period else ""))
    rep.result = {"distinct_cosets": w.distinct_cosets, "period": w.period, "details": {k: str(v) for k, v in w.details.items()}}
    return rep


def cmd_bch(args) -> Report:
    from .automorphisms import lift_aut_triangular, linear_delta, heisenberg_outer_derivation
    from .bch_groups import BchError, BchGroup, check_automorphism_transfer, check_group, check_recovery

    A = _need_algebra(resolve_source(args.algebra, args))
    rep = Report("bch", {"algebra": args.algebra, "check": args.check, "seed": args.seed})
    try:
        G = BchGroup(A)
    except BchError as exc:
        raise UsageError(str(exc)) from exc
    try:
        r = check_group(G, args.check, seed=args.seed)
    except BchError as exc:
        raise UsageError(str(exc)) from exc
    rep.add("group-associativity", r.associative, f"{r.triples_checked} triples")
    rep.add("group-identity", r.identity, "0 is a two-sided identity")
    rep.add("group-inverses", r.inverses, "-x inverts x")
    rep.add("group-powers", r.powers, "n-fold product equals n x for n <= 10")
    rep.add("commutator-is-bracket", r.commutator_is_bracket, "basis pairs and random pairs")
    if r.center_matches is not None:
        rep.add("group-center-is-lie-center", r.center_matches, "by enumeration")
    rep.add("lie-recovery", check_recovery(G, seed=args.seed), "recovered addition and bracket")
    if A.tag is not None and A.tag.kind == "SemidirectDouble":
        sigma = lift_aut_triangular(A, linear_delta(A, heisenberg_outer_derivation(A.tag.parts["R"])))
        rep.add("automorphism-transfer", check_automorphism_transfer(G, sigma, seed=args.seed), "lifted σ respects *")
    for f in r.failures:
        rep.note(f)
    return rep


def cmd_localring(args) -> Report:
    from . import local_rings as LR

    obj = resolve_source(args.algebra, args)
    rep = Report("localring", {"algebra": args.algebra, "maximal_ideal": args.maximal_ideal, "teichmuller": args.teichmuller})
    if isinstance(obj, LR.IntegersMod):
        rep.add("characteristic", None, str(LR.characteristic(obj)))
        nonunits = LR.nonunits(obj)
        closed = all(obj.add(a, b) in set(nonunits) for a in nonunits for b in nonunits)
        rep.add("local", closed, f"non-units {nonunits} form an ideal: {closed}")
        if args.teichmuller is not None and closed:
            r = LR.mult_representatives(obj, n=args.teichmuller)
            rep.add("multiplicative-representatives", r.ok, f"X = {sorted(r.X)}")
        c = LR.cohen_split_check(obj)
        rep.add("coefficient-field", None, "; ".join(c.notes))
        return rep
    A = obj
    if args.maximal_ideal:
        m = Subspace(A.field, A.dim, parse_vectors(A, args.maximal_ideal))
    elif A.tag is not None and "maximal_ideal" in A.tag.subspaces:
        m = A.tag.subspaces["maximal_ideal"]
    else:
        raise UsageError("--maximal-ideal is required for untagged algebras")
    loc = LR.is_local(A, m)
    for clause, value in loc.clauses.items():
        rep.add(f"local:{clause}", value, clause)
    for note in loc.notes:
        rep.note(note)
    if loc.clauses["unital"]:
        rep.add("characteristic", None, str(LR.characteristic(A)))
    if A.tag is not None and "maximal_ideal" in A.tag.subspaces and loc.ok:
        a = LR.asm_criterion(A)
        rep.add(
            "annihilator-criterion", None,
            f"m = ann(m): {a.criterion}; dim m = {a.m_dim}, dim ann(m) = {a.ann_dim}, "
            f"dim(m² + ann(m)) = {a.m2_plus_ann_dim}; connectedness {a.connectedness}",
        )
    if args.teichmuller is not None:
        r = LR.mult_representatives(A, m, args.teichmuller)
        rep.add("multiplicative-representatives", r.ok, f"{len(r.X)} representatives, one per residue class")
    if args.interp_field:
        f = LR.interp_field(A)
        rep.add("interpreted-field", f.ok, f"well-defined {f.well_defined}, axioms {f.field_axioms}, ≅ GF({f.q}): {f.isomorphic}, mult. order {f.multiplicative_order}")
    return rep


def cmd_decompose(args) -> Report:
    from .local_rings import idempotent_decomposition

    obj = resolve_source(args.algebra, args)
    rep = Report("decompose", {"algebra": args.algebra})
    d = idempotent_decomposition(obj)
    label = (lambda u: str(u)) if not isinstance(obj, Algebra) else (lambda u: repr(Element(obj, u)))
    rep.add("idempotents", d.orthogonal and d.sum_is_one, f"{[label(u) for u in d.idempotents]} orthogonal, sum 1")
    rep.add("factor-sizes", None, str(d.sizes))
    rep.add("reassembly", d.reassembly_bijective and d.reassembly_multiplicative, "a -> (a u_i) bijective and multiplicative")
    rep.result = {"idempotents": [label(u) for u in d.idempotents], "sizes": d.sizes}
    return rep


# -- parser ----------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, with_source: bool = True) -> None:
    if with_source:
        p.add_argument("algebra", help="path, builtin:KIND or zmod:N")
    p.add_argument("--field", default="Q", help="field for builtins: Q, GF(p), GF(p^k), Q(t), GF(p)(t)")
    p.add_argument("--n", type=int, default=1, help="size parameter for builtins")
    p.add_argument("--p", type=int, default=3, help="prime for null_quadratic")
    p.add_argument("--m", type=int, default=2, help="number of generators for null_quadratic")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonassoc", description="Exact computations with structure-constant algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a built-in construction")
    p.add_argument("kind", choices=BUILTIN_KINDS)
    _common(p, with_source=False)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="axiom report")
    _common(p)
    p.add_argument("--expect", help=f"comma list of asserted axioms from {', '.join(AXIOMS)}")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("invariants", help="annihilator, center, series")
    _common(p)
    p.add_argument("--subspace", help="names, tag:NAME or JSON vectors")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("chain", help="annihilator formula and analysis chain of a triangular ring")
    _common(p)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("derivations", help="derivation space")
    _common(p)
    p.add_argument("--vanish", help="names, tag:NAME or JSON vectors the derivations must kill")
    p.set_defaults(func=cmd_derivations)

    p = sub.add_parser("lift-aut", help="lift a derivation or annihilator-valued map to an automorphism")
    _common(p)
    _aut_args(p)
    p.set_defaults(func=cmd_lift_aut)

    p = sub.add_parser("orbit", help="coset orbit under a lifted automorphism")
    _common(p)
    _aut_args(p)
    p.add_argument("--element", required=True, help="names or JSON vector")
    p.add_argument("--modulo", default="zero", help="zero | ann | center")
    p.add_argument("--steps", type=int, default=20)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("witness", help="orbit witness procedures")
    p.add_argument("--kind", required=True, choices=("vector", "lie", "s_ring"))
    p.add_argument("--char", type=int, default=0)
    p.add_argument("--n", dest="n_steps", type=int, default=50)
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("bch", help="group x*y = x + y + [x,y]/2")
    _common(p)
    p.add_argument("--check", choices=("exhaustive", "random"), default="random")
    p.set_defaults(func=cmd_bch)

    p = sub.add_parser("localring", help="locality, characteristic, representatives")
    _common(p)
    p.add_argument("--maximal-ideal", help="names, tag:NAME or JSON vectors")
    p.add_argument("--teichmuller", type=int, help="exponent n with m^n = 0")
    p.add_argument("--interp-field", action="store_true", help="field structure on ann(m)")
    p.set_defaults(func=cmd_localring)

    p = sub.add_parser("decompose", help="idempotent decomposition of a finite ring")
    _common(p)
    p.set_defaults(func=cmd_decompose)
    return parser


def dispatch(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        report = args.func(args)
    except (UsageError, AlgebraParseError) as exc:
        if getattr(args, "json", False):
            payload = {"command": args.command, "inputs": {}, "properties": [
                {"anchor": "input", "status": "fail", "detail": str(exc)}], "exit": EXIT_USAGE}
            print(json.dumps(payload, ensure_ascii=False, indent=2), file=out)
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except (AlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(report.as_dict(), ensure_ascii=False, indent=2), file=out)
    elif args.command == "construct":
        print(json.dumps(report.result, ensure_ascii=False, indent=2), file=out)
    else:
        print(report.render(), file=out)
    return report.exit


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
