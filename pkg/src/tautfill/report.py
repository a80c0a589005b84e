"""Run pipelines behind the CLI and their JSON-ready reports.

Rationals are written as ``"num/den"`` strings; tets and faces as sorted
vertex lists, in lexicographic order.
"""
from __future__ import annotations

import time
from fractions import Fraction

from . import adu, ball, fill, oracle
from .chains import Chain, l1_norm, maxdeg
from .sphere import SphereTriangulation, glue, orientation_cycle, relabel_for_sum


def rat(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_rat(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def chain_json(c: Chain) -> list:
    return [[list(k), rat(v)] for k, v in c.items()]


def chain_from_json(dim: int, data: list) -> Chain:
    return Chain(dim, {tuple(k): parse_rat(v) for k, v in data})


def shelling_json(s: ball.ShellingOrder) -> dict:
    return {"order": [list(t) for t in s.order], "types": list(s.types)}


def flag_json(r: ball.FlagReport) -> dict:
    return {"is_flag": r.is_flag,
            "empty_triangles": [list(t) for t in r.empty_triangles],
            "empty_k4": [list(t) for t in r.empty_k4],
            "k5_cliques": [list(t) for t in r.k5_cliques]}


def certificate_json(tau: ball.BallComplex, shell: ball.ShellabilityReport,
                     flag: ball.FlagReport, cert: ball.BallCertificate) -> dict:
    """Ball certificate: tets with signs, one shelling per initial tet, flag report."""
    shellings = {}
    for t, r in shell.results.items():
        key = ",".join(map(str, t))
        shellings[key] = shelling_json(r) if isinstance(r, ball.ShellingOrder) else {"error": r}
    return {
        "tets": [[list(t), tau.sign(t)] for t in tau.tets],
        "freely_shellable": shell.passed,
        "shellings": shellings,
        "flag": flag_json(flag),
        "ball": {"connected": cert.connected,
                 "boundary_is_sphere": cert.boundary_is_sphere,
                 "euler_characteristic": cert.euler_characteristic,
                 "bad_links": cert.bad_links,
                 "passed": cert.passed},
    }


def _verify_filling(M: Chain, sigma: SphereTriangulation, failures: list, label: str) -> dict:
    try:
        tau = ball.to_ball_complex(M, sigma)
    except ball.BallError as exc:
        failures.append(f"{label}ball: {exc}")
        return {"ball_error": str(exc)}
    shell = ball.verify_freely_shellable(tau)
    flag = ball.flag_check(tau)
    cert = ball.certify_ball(tau)
    if not shell.passed:
        failures.append(f"{label}shelling: fails from {len(shell.failures)} initial tets")
    if not flag.is_flag:
        failures.append(f"{label}flag: taboo configuration present")
    if not cert.passed:
        failures.append(f"{label}ball: global certificate failed")
    for rep in (fill.verify_no_internal_vertex(M), fill.verify_no_complete_cone(M)):
        if not rep.passed:
            failures.append(f"{label}{rep.name}: {rep.violations}")
    out = certificate_json(tau, shell, flag, cert)
    out["eligibility"] = ball.eligibility_observation(tau)
    return out


def fill_report(sigma: SphereTriangulation, descriptor: str, qvol_only: bool = False,
                verify: bool = True) -> dict:
    X = orientation_cycle(sigma)
    failures: list[str] = []
    timings = {}
    apex, cone_chain = fill.coning_bound(X)
    bound = l1_norm(cone_chain)
    report = {
        "instance": descriptor,
        **sigma.stats,
        "maxdeg": sigma.maxdeg,
        "coning_vertex": apex,
        "coning_bound": rat(bound),
    }
    t = time.perf_counter()
    q = fill.qvol(X)
    timings["qvol"] = round(time.perf_counter() - t, 4)
    report["qvol"] = rat(q.value)
    if q.value > bound:
        failures.append("bound: qvol exceeds the coning bound")
    if qvol_only:
        report["filling"] = chain_json(q.filling)
    else:
        t = time.perf_counter()
        z = fill.zvol(X)
        timings["zvol"] = round(time.perf_counter() - t, 4)
        report["zvol"] = rat(z.value)
        report["zvol_nodes"] = z.nodes
        report["qvol_equals_zvol"] = q.value == z.value
        report["filling"] = chain_json(z.filling)
        if not q.value <= z.value <= bound:
            failures.append("bound: expected qvol <= zvol <= coning bound")
        if verify:
            t = time.perf_counter()
            report["certificate"] = _verify_filling(z.filling, sigma, failures, "")
            timings["verify"] = round(time.perf_counter() - t, 4)
            cert = report["certificate"]
            if "shellings" in cert:
                report["shelling_summary"] = {
                    "initial_tets": len(cert["shellings"]),
                    "succeeded": sum(1 for s in cert["shellings"].values() if "order" in s)}
                report["flag_summary"] = cert["flag"]["is_flag"]
    report["timings"] = timings
    report["failures"] = failures
    return report


def sum_report(sigma1: SphereTriangulation, face1, sigma2: SphereTriangulation, face2,
               descriptor: str, disjoint: bool = False, verify: bool = True) -> dict:
    failures: list[str] = []
    if disjoint:
        shift = max(sigma1.vertices) + 1
        right = sigma2.relabel({x: x + shift for x in sigma2.vertices})
        X1, X2 = orientation_cycle(sigma1), orientation_cycle(right)
        w = adu.witness(X1, X2)
        report = {"instance": descriptor, "mode": "disjoint", "shared_vertices": []}
    else:
        right = relabel_for_sum(sigma1, face1, sigma2, face2)
        total_sphere = glue(sigma1, right)
        report = fill_report(total_sphere, descriptor, verify=verify)
        failures += report["failures"]
        w = adu.witness_for_sum(orientation_cycle(total_sphere),
                                orientation_cycle(sigma1), orientation_cycle(right))
        report["mode"] = "connected_sum"
        report["shared_vertices"] = sorted(w.C)
    add = adu.additivity_check(w)
    qadd = adu.qvol_additivity_check(w)
    report["left"] = {"v": sigma1.v, "zvol": rat(add.zvol_x), "qvol": rat(qadd.qvol_x)}
    report["right"] = {"v": right.v, "zvol": rat(add.zvol_y), "qvol": rat(qadd.qvol_y)}
    report["total_zvol"] = rat(add.zvol_sum)
    report["total_qvol"] = rat(qadd.qvol_sum)
    report["zvol_additive"] = add.additive
    report["qvol_additive"] = qadd.additive
    report["hybrid_mass"] = rat(add.hybrid_mass)
    if not add.passed:
        failures.append("additivity: Zvol does not add or a split inequality fails")
    if not qadd.passed:
        failures.append(f"qvol_additivity: {qadd.error or 'Qvol does not add'}")
    M = fill.zvol(w.total).filling
    try:
        mx, my = adu.split_taut(M, w)
        report["split"] = {"ok": True, "left": chain_json(mx), "right": chain_json(my)}
        if disjoint and verify:
            report["split"]["left_certificate"] = _verify_filling(mx, sigma1, failures, "left ")
            report["split"]["right_certificate"] = _verify_filling(my, right, failures, "right ")
    except adu.SplitError as exc:
        report["split"] = {"ok": False, "error": str(exc)}
        failures.append(f"split: {exc}")
    report["failures"] = failures
    return report


def oracle_report(sigma: SphereTriangulation, descriptor: str, coeff_bound: int = 1,
                  enumerate_all: bool = False, check: bool = False) -> dict:
    X = orientation_cycle(sigma)
    failures: list[str] = []
    res = oracle.oracle_zvol(X, coeff_bound, collect=enumerate_all)
    report = {"instance": descriptor, **sigma.stats, "maxdeg": sigma.maxdeg,
              "coeff_bound": coeff_bound, "search_bound": res.search_bound,
              "oracle_zvol": rat(res.value), "nodes": res.nodes}
    if enumerate_all:
        report["taut_fillings"] = [chain_json(m) for m in res.all_optimal_fillings]
        report["taut_count"] = len(res.all_optimal_fillings)
    if check:
        z = fill.zvol(X)
        report["solver_zvol"] = rat(z.value)
        report["agree"] = z.value == res.value
        if not report["agree"]:
            failures.append(f"check: oracle {res.value} != solver {z.value}")
    report["failures"] = failures
    return report


def coning_gap(sigma: SphereTriangulation) -> dict:
    """Coning bound against ``2v - 10``."""
    X = orientation_cycle(sigma)
    return {"v": sigma.v, "f": sigma.f, "maxdeg": int(maxdeg(X)),
            "bound": int(l1_norm(X) - maxdeg(X)), "two_v_minus_10": 2 * sigma.v - 10}
