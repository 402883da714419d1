"""Named pipelines over an :class:`AlgebraSpec`, each producing a Report."""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb

from . import hopf
from .errors import (
    CommutationFailure,
    ConfluenceFailure,
    ConfluenceNotEstablished,
    NotDiagonalizableQuadratic,
    SemanticError,
)
from .freealg import NCPoly
from .parsing import parse_ncpoly
from .quadspace import (
    EndoTensor,
    master_relation_check,
    quadratic_minimal_polynomial,
    relations_from_B,
    spectral_complement,
    yang_baxter_witnesses,
)
from .report import FAIL, PASS, WARNING, CheckResult, Report, result
from .solver import generate_constraints, solve_diagonal_twist, verify_twist
from .specfile import render_spec
from .twisted_frt import (
    TwistTensor,
    build_M,
    build_M_diagonal,
    build_presentation,
    check_coideal,
    check_comodule_diagrams,
    check_counit,
    check_multiplicative,
    cross_relations,
    cross_system,
    crossed_system,
    presentation_from_relations,
)

COMMANDS = (
    "check-yb",
    "derive-bialgebra",
    "check-bialgebra",
    "solve-twist",
    "check-hopf",
    "normal-form",
    "confluence",
)


@dataclass
class Resolved:
    """Spec with the twist solved (if asked) and parameter values applied."""

    spec: object
    params: object
    B: EndoTensor
    gamma: TwistTensor
    family: object
    relations: tuple
    det: object
    antipode: tuple


def _merge(P, names):
    from .scalar import ParamSet

    extra = tuple(x for x in names if x not in P.names)
    return ParamSet(P.names + extra) if extra else P


def _rebase_nc(x, P):
    return NCPoly(x.alphabet, P, {w: c.rebase(P) for w, c in x.items()})


def _sub_nc(x, binding):
    return NCPoly(x.alphabet, x.params, {w: c.substitute(binding) for w, c in x.items()})


def resolve(spec, binding=None):
    binding = dict(binding or {})
    n = spec.dim
    family = None
    P = spec.params
    if spec.twist.mode == "solve":
        system = generate_constraints(n).with_constraints(spec.twist.expand(n))
        family = solve_diagonal_twist(system, _merge(P, _solver_names(system)))
        P = family.params
        gamma = family.twist(P)
    else:
        gamma = TwistTensor.diagonal(n, P, spec.twist.expand(n))
    for name in binding:
        if name not in P:
            raise SemanticError(f"--param names unknown parameter {name!r}")
    B = EndoTensor(n, [[x.rebase(P) for x in row] for row in spec.B.rows], P)
    rels = tuple(_rebase_nc(r, P) for r in spec.relations)
    det = None if spec.det is None else _rebase_nc(spec.det, P)
    anti = tuple((k, _rebase_nc(v, P)) for k, v in spec.antipode)
    if binding:
        B = B.substitute(binding)
        gamma = gamma.substitute(binding)
        rels = tuple(_sub_nc(r, binding) for r in rels)
        det = None if det is None else _sub_nc(det, binding)
        anti = tuple((k, _sub_nc(v, binding)) for k, v in anti)
        if family is not None:
            family = family.specialize(binding)
    return Resolved(spec, P, B, gamma, family, rels, det, anti)


def _solver_names(system):
    # names the solver introduces for a pure ansatz; constraints may pin some
    n = system.n
    return ("p",) if n == 2 else tuple(f"p{j}" for j in range(1, n))


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    out.timing_ms = (time.perf_counter() - t0) * 1000.0
    return out


def _presentation(r, max_degree):
    """Presentation from [relations] if given, else derived from B M - M B."""
    if r.relations:
        M = build_M(r.gamma)
        return presentation_from_relations(r.spec.dim, r.params, list(r.relations), max_degree, B=r.B, twist=r.gamma, M=M)
    return build_presentation(r.B, r.gamma, max_degree)


def _plane_systems(B, max_degree):
    out = [("plane", relations_from_B(B).rewrite_system(max_degree))]
    try:
        out.append(("complement", spectral_complement(B).rewrite_system(max_degree)))
    except NotDiagonalizableQuadratic:
        pass
    return out


def _texts(polys):
    return [str(p) for p in polys]


# -- commands --------------------------------------------------------------------------


def cmd_check_yb(r, report, max_degree):
    B = r.B
    wit = yang_baxter_witnesses(B)
    report.add(
        _timed(
            lambda: result(
                "yang-baxter",
                not wit,
                wit,
                message="" if not wit else f"{len(wit)} entries of B12 B23 B12 - B23 B12 B23 are nonzero",
            )
        )
    )
    sym, inv, idem = B.is_symmetric(), B.is_involutive(), B.is_idempotent()
    report.outputs["symmetric"] = sym
    report.outputs["involutive"] = inv
    report.outputs["idempotent"] = idem
    if inv and not idem:
        report.add(
            CheckResult(
                "idempotent-wording",
                WARNING,
                message="B^2 = I (involutive); B^2 = B fails, so 'idempotent' describes this matrix inaccurately",
            )
        )
    try:
        quad = quadratic_minimal_polynomial(B)
    except NotDiagonalizableQuadratic:
        quad = None
    if quad is not None:
        report.outputs["B^2"] = f"({quad[0]}) B + ({quad[1]}) I"
    report.outputs["plane_relations"] = _texts(relations_from_B(B).relations)
    try:
        report.outputs["complement_relations"] = _texts(spectral_complement(B).relations)
    except NotDiagonalizableQuadratic as exc:
        report.outputs["complement_relations"] = f"unavailable: {exc}"


def _mutual_reduction(a_polys, a_sys, b_polys, b_sys):
    wit = []
    for p in a_polys:
        if not b_sys.is_zero_mod(p):
            wit.append({"relation": str(p), "residual": str(b_sys.normal_form(p)), "direction": "given -> derived"})
    for p in b_polys:
        if not a_sys.is_zero_mod(p):
            wit.append({"relation": str(p), "residual": str(a_sys.normal_form(p)), "direction": "derived -> given"})
    return wit


def cmd_derive(r, report, max_degree):
    gamma = r.gamma
    M = build_M(gamma)
    report.add(_timed(lambda: result("M-two-routes", M == build_M_diagonal(gamma))))
    derived = build_presentation(r.B, gamma, max_degree)
    report.outputs["ideal"] = _texts(derived.relations())
    report.outputs["cross_relations"] = _texts(cross_relations(gamma))
    report.outputs["twist"] = {"g({},{},{})".format(*k): str(v) for k, v in sorted(gamma.g.items())}
    conf = derived.system.confluence()
    report.outputs["critical_pairs"] = len(conf.pairs)
    report.outputs["confluence"] = "complete" if conf.complete else f"verified to degree {conf.verified_degree}"
    if r.relations:
        given = presentation_from_relations(r.spec.dim, r.params, list(r.relations), max_degree)

        def agree():
            try:
                wit = _mutual_reduction(list(r.relations), given.system, derived.relations(), derived.system)
            except ConfluenceNotEstablished as exc:
                return CheckResult("relations-agree", WARNING, message=str(exc))
            return result("relations-agree", not wit, wit)

        report.add(_timed(agree))


def cmd_check_bialgebra(r, report, max_degree):
    pres = _presentation(r, max_degree)
    M, sys = pres.M, pres.system
    wanted = set(r.spec.checks) if r.spec.checks else None

    def want(name):
        return wanted is None or name in wanted

    if want("multiplicative"):
        report.add(_timed(check_multiplicative, M, sys))
    if want("counit"):
        report.add(_timed(check_counit, M))
    if want("coideal"):
        report.add(_timed(check_coideal, r.B, M, sys))
    if want("comodule-diagrams"):
        for label, sysA in _plane_systems(r.B, max_degree):
            name = "comodule-diagrams" if label == "plane" else f"comodule-diagrams/{label}"
            report.add(_timed(check_comodule_diagrams, r.gamma, M, sys, sysA, name))
    if r.B.is_involutive():
        report.add(_timed(lambda: result("master-relation", master_relation_check(r.B, M, sys))))
    report.outputs["relations"] = _texts(sys.relations())


def cmd_solve_twist(r, report, max_degree):
    n = r.spec.dim
    system = generate_constraints(n)
    if r.spec.twist.mode == "solve":
        system = system.with_constraints(r.spec.twist.expand(n))
    family = solve_diagonal_twist(system, _merge(r.spec.params, _solver_names(system)))
    report.outputs["equations"] = len(system)
    report.outputs["gauge"] = family.gauge or "none"
    report.outputs["parameters"] = list(family.parameters)
    report.outputs["g"] = family.text_table()
    report.add(_timed(lambda: result("family-satisfies-constraints", family.satisfies(system),
                                     [str(e) for e in system.residuals(family.table)])))
    if r.spec.twist.mode == "table":
        table = {k: v for k, v in r.gamma.g.items()}
        bad = system.residuals(table)
        report.add(result("spec-twist-satisfies-constraints", not bad, [str(e) for e in bad]))
    ver = verify_twist(family, r.B, max_degree)
    for c in ver.checks:
        c.name = f"verify/{c.name}"
        report.add(c)
    report.outputs["ideal"] = _texts(ver.ideal)


def cmd_check_hopf(r, report, max_degree):
    if r.spec.dim != 2:
        raise SemanticError("check-hopf is implemented for dim 2 only")
    pres = _presentation(r, max_degree)
    A, P = pres.alphabet, pres.params
    t0 = time.perf_counter()
    try:
        det = hopf.det_qp(pres)
    except CommutationFailure as exc:
        report.add(CheckResult("determinant-commutation", FAIL, [{"letter": exc.letter, "residual": str(exc.residual)}], message=str(exc)))
        return
    report.add(CheckResult("determinant-commutation", PASS, timing_ms=(time.perf_counter() - t0) * 1000))
    report.outputs["determinant"] = str(det.value)
    report.outputs["commutation"] = {k: str(v) for k, v in det.table.items()}
    report.outputs["determinant_central"] = all(v.is_one() for v in det.table.values())
    if r.det is not None:
        diff = pres.system.normal_form(r.det - det.value)
        report.add(result("determinant-matches-claim", not diff, [{"residual": str(diff)}] if diff else []))
    report.add(_timed(hopf.check_determinant_grouplike, det, pres))
    try:
        loc = hopf.localize(pres, det)
    except ConfluenceFailure as exc:
        report.add(CheckResult("localization", FAIL, [str(p.overlap) for p in exc.pairs], message=str(exc)))
        return
    conf = loc.system.confluence()
    report.add(result("localization", conf.locally_confluent, details={"critical_pairs": len(conf.pairs)}))
    S = hopf.antipode_map(loc)
    report.outputs["antipode"] = S.text(A)
    report.add(_timed(hopf.check_antipode, S, loc))
    if r.antipode:
        claimed = hopf.antipode_from_table(loc, dict(r.antipode))
        wit = []
        for name, _ in r.antipode:
            x = NCPoly.letter(A, P, name)
            if not loc.is_zero(claimed.apply(x) - S.apply(x)):
                wit.append({"letter": name, "claimed": str(claimed.apply(x)), "solved": str(S.apply(x))})
        report.add(result("antipode-matches-claim", not wit, wit))
        report.add(_timed(hopf.check_antipode, claimed, loc, "antipode/claimed"))
    report.outputs["antipode_squared"] = hopf.antipode_square(S, loc)


def cmd_normal_form(r, report, max_degree, expr):
    pres = _presentation(r, max_degree)
    A, P = pres.alphabet, pres.params
    x = parse_ncpoly(expr, A, P)
    used = {A.letters[k].role for k in x.letters_used()}
    names = {A.name(k) for k in x.letters_used()}
    sys, label = pres.system, "bialgebra"
    if names & {"D", "Dinv"}:
        sys, label = hopf.localize(pres, hopf.det_qp(pres)).system, "localized"
    if "e" in used:
        (_, plane), *_ = _plane_systems(r.B, max_degree)
        sys = sys.union(cross_system(r.gamma, max_degree), plane)
        label += "+crossed"
    nf = sys.normal_form(x)
    report.outputs["input"] = str(x)
    report.outputs["normal_form"] = str(nf)
    report.outputs["system"] = label
    try:
        sys.certify(x)
        report.add(CheckResult("certified", PASS))
    except ConfluenceNotEstablished as exc:
        report.add(CheckResult("certified", WARNING, message=str(exc)))


def commutative_count(generators, degree):
    return comb(degree + generators - 1, generators - 1)


def confluence_data(r, max_degree):
    """[(label, system, n_generators)] examined by the confluence command."""
    pres = _presentation(r, max_degree)
    out = [("bialgebra", pres.system, len(pres.system.generators))]
    for label, sysA in _plane_systems(r.B, max_degree):
        sys = crossed_system(pres, r.gamma, [sysA])
        out.append((f"crossed/{label}", sys, len(sys.generators)))
    return out


def cmd_confluence(r, report, max_degree, figure=None):
    series = {}
    for label, sys, ngen in confluence_data(r, max_degree):
        t0 = time.perf_counter()
        conf = sys.confluence()
        ms = (time.perf_counter() - t0) * 1000
        unresolved = [sys.alphabet.render_word(p.overlap) for p in conf.unresolved]
        if conf.unresolved:
            status = FAIL
        elif conf.complete:
            status = PASS
        else:
            status = WARNING
        msg = "all ambiguities resolve" if conf.complete else (
            f"resolved up to degree {conf.verified_degree}" if not conf.unresolved else f"{len(conf.unresolved)} unresolved"
        )
        report.add(CheckResult(f"confluence/{label}", status, [{"overlap": u} for u in unresolved],
                               {"critical_pairs": len(conf.pairs)}, msg, ms))
        counts = [sys.count_normal_words(d) for d in range(max_degree + 1)]
        series[label] = counts
        report.outputs[f"normal_words/{label}"] = counts
        if label == "bialgebra":
            expect = [commutative_count(ngen, d) for d in range(max_degree + 1)]
            report.outputs["commutative_counts/bialgebra"] = expect
            wit = [{"degree": d, "normal": c, "commutative": e} for d, (c, e) in enumerate(zip(counts, expect)) if c != e]
            report.add(result("pbw/bialgebra", not wit, wit))
    if figure:
        from .figures import plot_normal_word_counts

        plot_normal_word_counts(series, figure, reference=report.outputs.get("commutative_counts/bialgebra"))
        report.outputs["figure"] = str(figure)


def run_pipeline(spec, command, *, binding=None, max_degree=None, expr=None, figure=None, spec_text=None):
    if command not in COMMANDS:
        raise SemanticError(f"unknown command {command!r}; known: {', '.join(COMMANDS)}")
    md = spec.max_degree if max_degree is None else max_degree
    r = resolve(spec, binding)
    label = command if not binding else f"{command} " + " ".join(f"{k}={v}" for k, v in sorted(binding.items()))
    report = Report(label, spec_text if spec_text is not None else render_spec(spec))
    if command == "check-yb":
        cmd_check_yb(r, report, md)
    elif command == "derive-bialgebra":
        cmd_derive(r, report, md)
    elif command == "check-bialgebra":
        cmd_check_bialgebra(r, report, md)
    elif command == "solve-twist":
        cmd_solve_twist(r, report, md)
    elif command == "check-hopf":
        cmd_check_hopf(r, report, md)
    elif command == "normal-form":
        if expr is None:
            raise SemanticError("normal-form needs an expression")
        cmd_normal_form(r, report, md, expr)
    else:
        cmd_confluence(r, report, md, figure)
    return report
