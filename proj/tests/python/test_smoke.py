import math

import pytest

import ipcsim


def test_run_window_basic_shape():
    run = ipcsim.run_window(1, -50, 10)
    assert run.window.lo == -50 and run.window.hi == 10
    parents = run.parents()
    weights = run.weights()
    assert len(parents) == len(weights) == 60
    for n in range(-49, 11):
        assert run.parent_of(n) < n
        assert run.weight_of(n) > 0.0
        box = run.box_of(n)
        assert box.left < n
        assert box.height == run.weight_of(n)


def test_stabilize_certifies_and_agrees_with_wider_margin():
    a = ipcsim.stabilize(7, 0, 0)
    b = ipcsim.stabilize(7, 0, 0, initial_margin_factor=16)
    assert a.certified and b.certified
    assert a.weights_below_one and b.weights_below_one
    assert a.run.weight_of(0) == b.run.weight_of(0)
    assert a.run.parent_of(0) == b.run.parent_of(0)
    assert a.run.box_of(0).left == b.run.box_of(0).left


def test_harvest_ponds_invariants():
    hr = ipcsim.harvest_ponds(11, stop_below=1.0, min_outlets=2, horizon=200)
    assert hr.complete
    certified = [p for p in hr.ponds if p.certified]
    assert len(certified) >= 2
    for p in certified:
        assert p.height > 1.0
        assert p.height < p.start_height
        assert p.size >= 1
        if p.path_len >= 0:
            assert len(p.hang_sizes) == p.path_len
            assert sum(p.hang_sizes) == p.size
    w = ipcsim.forward_max_process(hr.ponds)
    assert all(x >= y for x, y in zip(w, w[1:]))


def test_backward_trace_climbs():
    run = ipcsim.run_window(3, -20000, 0)
    trace = ipcsim.backward_trace(run, 0, 0.5)
    if trace:
        vs = [v for v, _ in trace]
        hs = [h for _, h in trace]
        assert vs[0] == 0
        assert all(a > b for a, b in zip(vs, vs[1:]))
        assert all(a < b for a, b in zip(hs, hs[1:]))


def test_exact_laws():
    assert ipcsim.theta(1.0) == 0.0
    th = ipcsim.theta(2.0)
    assert abs(1.0 - th - math.exp(-2.0 * th)) < 1e-12
    m = ipcsim.dual_m(2.0)
    assert abs(2.0 * math.exp(-2.0) - m * math.exp(-m)) < 1e-12
    assert abs(ipcsim.dual_inverse(m) - 2.0) < 1e-9
    assert abs(ipcsim.borel_pmf(1) - math.exp(-1.0)) < 1e-15
    assert abs(sum(ipcsim.phi_pmf(0.5, n) for n in range(1, 2000)) - 1.0) < 1e-9
    assert 0.0 < ipcsim.q_map(1.5, "dual") < 1.0
    assert 0.0 < ipcsim.q_map(1.5, "one-minus-theta") < 1.0
    with pytest.raises(ipcsim.IpcError):
        ipcsim.q_map(1.5, "bogus")


def test_estimand_registry_and_tiny_campaign():
    names = ipcsim.list_estimands()
    assert "h0-uniform" in names and "q-map" in names
    report = ipcsim.run_estimand("F-probability", scale=0.01, threads=1)
    assert report["estimand"] == "F-probability"
    assert report["n"] > 0
    assert report["stat_kind"] == "relerr"
    null = ipcsim.run_estimand("h0-uniform", scale=0.01, threads=1, null_run=True)
    assert null["pass"] in (True, False)
