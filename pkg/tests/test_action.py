import cmath
import math

import pytest

from stokeslab.action import (
    PathC,
    action,
    agmon_cumulative,
    agmon_mass,
    barrier_action,
    sqrt_q_along,
    turning_exclusion_radius,
    well_action,
)
from stokeslab.errors import BranchJump, SignError
from stokeslab.poly import Poly, turning_points

P_HARM = Poly([-1, 0, 1])                 # z^2 - 1
P_2WELL = Poly.from_roots([-2, -1, 1, 2])  # (z^2-1)(z^2-4)
P_1WELL = Poly([-1, 0, 0, 0, 1])           # (z^2-1)(z^2+1) = z^4 - 1

# independent quadrature oracle values (mpmath.quad, 30 digits)
WELL_2WELL = 1.16149922856200743542697633343   # int_1^2 sqrt((x^2-1)(4-x^2))
XI_2WELL = 3.04007997634579686491382048208     # int_-1^1 sqrt((1-x^2)(4-x^2))
ALPHA_1WELL = 1.74803836952807987364322639326  # int_-1^1 sqrt(1-x^4)


def test_sqrt_q_along_positive_branch():
    samples = sqrt_q_along(P_HARM, PathC([2.0, 3.0], math.sqrt(3.0)))
    assert all(abs(w.imag) < 1e-12 and w.real > 0 for _, w in samples)


def test_sqrt_q_along_negative_branch():
    samples = sqrt_q_along(P_HARM, PathC([2.0, 3.0], -math.sqrt(3.0)))
    assert all(abs(w.imag) < 1e-12 and w.real < 0 for _, w in samples)


def test_sqrt_q_along_continuous_on_imaginary_crossing():
    # straight path -2i -> 2i passes through no turning point of z^2-1;
    # a 10x denser sampling must produce the same branch at the endpoint.
    path = PathC([-2j, 2j], cmath.sqrt(P_HARM(-2j)))
    coarse = sqrt_q_along(P_HARM, path, samples_per_segment=64)
    fine = sqrt_q_along(P_HARM, path, samples_per_segment=640)
    assert abs(coarse[-1][1] - fine[-1][1]) < 1e-9
    phases = [cmath.phase(w) for _, w in fine]
    jumps = [abs(b - a) for a, b in zip(phases[:-1], phases[1:])]
    assert max(jumps) < 0.5 * math.pi


def test_sqrt_q_along_detects_turning_point_on_path():
    with pytest.raises(BranchJump):
        sqrt_q_along(P_HARM, PathC([0.5, 1.5], cmath.sqrt(P_HARM(0.5))))


def test_action_quarter_circle_value():
    # S from 1 to 0 on the branch sqrt(q) = i sqrt(1-x^2): closed form -i pi/4
    av = action(P_HARM, PathC([1.0, 0.0], 1j))
    assert abs(av.S - (-1j * math.pi / 4)) < 1e-10


def test_action_closed_path_zero():
    # rectangle not enclosing any turning point of z^2-1
    pts = [2.0 + 0.5j, 3.0 + 0.5j, 3.0 + 1.5j, 2.0 + 1.5j, 2.0 + 0.5j]
    av = action(P_HARM, PathC(pts, cmath.sqrt(P_HARM(pts[0]))))
    assert abs(av.S) < 1e-10


def test_action_well_segment_real_positive():
    av = action(P_2WELL, PathC([-1.0, 1.0], 1.0))
    assert abs(av.S.imag) < 1e-10
    assert av.S.real > 0
    assert abs(av.S.real - XI_2WELL) < 1e-9


def test_action_reversal_antisymmetry():
    path = PathC([2.0, 2.5 + 1j, 3.0], math.sqrt(3.0))
    fwd = action(P_HARM, path)
    rev = action(P_HARM, path.reversed(fwd.branch_end))
    assert abs(fwd.S + rev.S) < 1e-10 * (1 + abs(fwd.S))
    assert abs(fwd.abs_mass - rev.abs_mass) < 1e-9 * fwd.abs_mass


def test_action_path_independence():
    seed = math.sqrt(3.0)
    p1 = PathC([2.0, 3.0 + 1j], seed)
    p2 = PathC([2.0, 2.0 + 1j, 3.0 + 1j], seed)
    s1 = action(P_HARM, p1).S
    s2 = action(P_HARM, p2).S
    assert abs(s1 - s2) < 1e-8 * (1 + abs(s1))


def test_action_conjugation_symmetry():
    seed = cmath.sqrt(P_2WELL(2.5 + 0.5j))
    pts = [2.5 + 0.5j, 3.0 + 1.0j, 3.5 + 0.2j]
    s = action(P_2WELL, PathC(pts, seed)).S
    sc = action(P_2WELL, PathC([z.conjugate() for z in pts], seed.conjugate())).S
    assert abs(s.conjugate() - sc) < 1e-10 * (1 + abs(s))


def test_well_action_closed_form():
    assert abs(well_action(P_HARM, -1.0, 1.0) - math.pi / 2) < 1e-10


def test_well_action_oracle_and_symmetry():
    right = well_action(P_2WELL, 1.0, 2.0)
    left = well_action(P_2WELL, -2.0, -1.0)
    assert abs(right - WELL_2WELL) < 1e-10
    assert abs(left - right) < 1e-12


def test_well_action_sign_error():
    with pytest.raises(SignError):
        well_action(P_2WELL, -1.0, 1.0)  # q > 0 there


def test_barrier_action_oracle():
    assert abs(barrier_action(P_2WELL, -1.0, 1.0) - XI_2WELL) < 1e-10


def test_barrier_action_sign_error():
    with pytest.raises(SignError):
        barrier_action(P_1WELL, -1.0, 1.0)  # q < 0 there


def test_agmon_mass_closed_form_and_additivity():
    assert abs(agmon_mass(P_HARM, [-1.0, 1.0]) - 0.5) < 1e-10
    assert agmon_mass(P_HARM, [0.5]) == 0.0
    whole = agmon_mass(P_HARM, [-1.0, 1.0])
    split = agmon_mass(P_HARM, [-1.0, 0.0]) + agmon_mass(P_HARM, [0.0, 1.0])
    assert abs(whole - split) < 1e-10


def test_agmon_mass_node_insertion_invariance():
    a = agmon_mass(P_1WELL, [1j * 1.2, 1j * 2.6])
    b = agmon_mass(P_1WELL, [1j * 1.2, 1j * 1.9, 1j * 2.2, 1j * 2.6])
    assert abs(a - b) < 1e-10


def test_agmon_oracle_one_well():
    assert abs(agmon_mass(P_1WELL, [-1.0, 1.0]) - ALPHA_1WELL / math.pi) < 1e-10


def test_agmon_cumulative_monotone():
    cum = agmon_cumulative(P_HARM, [-1.0, -0.5, 0.0, 0.5, 1.0])
    assert cum[0] == 0.0
    assert all(b > a for a, b in zip(cum[:-1], cum[1:]))
    assert abs(cum[-1] - 0.5) < 1e-8


def test_exclusion_radius_scale():
    tps = turning_points(P_HARM)
    r1 = turning_exclusion_radius(P_HARM, tps[1], lam=1.0)
    assert abs(r1 - 2.0 ** (-1.0 / 3.0)) < 1e-12
    r2 = turning_exclusion_radius(P_HARM, tps[1], lam=16.0)
    assert r2 < r1


def test_path_validation():
    tps = turning_points(P_HARM)
    PathC([1.0, 3.0]).validate(P_HARM, tps)  # endpoint may be a turning point
    with pytest.raises(ValueError):
        PathC([1.0 + 1e-4j, 3.0]).validate(P_HARM, tps)
