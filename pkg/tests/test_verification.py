import pytest

from qrdet.fp_arith import legendre, primes_between
from qrdet.reports import CHECK_IDS, TheoremReport, judge
from qrdet.verification import (
    SweepConfig,
    prime_reports,
    run_randomized_identities,
    run_sweep,
    summarize,
    tier_config,
)


def cfg(**kw):
    return SweepConfig(**kw)


@pytest.mark.parametrize(
    "kw",
    [
        dict(p_min=3),
        dict(p_max=2**31),
        dict(p_min=11, p_max=7),
        dict(d_mode="some"),
        dict(m_mode="head"),
        dict(d_mode="explicit"),
        dict(m_mode="explicit"),
        dict(d_mode="sampled", d_count=0),
        dict(checks=("T-Z",)),
        dict(checks=()),
    ],
)
def test_config_validation(kw):
    with pytest.raises(ValueError):
        SweepConfig(**kw)


def test_checks_normalized_to_canonical_order():
    assert cfg(checks=("AUX", "T-A")).checks == ("T-A", "AUX")


def test_d_and_m_selection():
    c = cfg(d_mode="explicit", d_values=(1, 8, 14, -1), m_mode="explicit", m_values=(5, 4, 5))
    assert c.d_values_for(7) == [1, 6]
    assert c.m_values_for(7) == [4, 5]
    assert cfg(m_mode="tail").m_values_for(13) == [9, 10, 11]
    assert cfg(m_mode="full").m_values_for(13) == [7, 8, 9, 10, 11]


def test_sampled_d_reproducible_and_balanced():
    c = cfg(d_mode="sampled", d_count=8, rng_seed=42)
    ds = c.d_values_for(101)
    assert ds == c.d_values_for(101)
    assert len(ds) == len(set(ds)) == 16
    assert all(0 < d < 101 for d in ds)
    assert sum(legendre(d, 101) == 1 for d in ds) == 8
    assert ds != cfg(d_mode="sampled", d_count=8, rng_seed=43).d_values_for(101)
    # fewer residues than requested: take all of them
    assert len(cfg(d_mode="sampled", d_count=8).d_values_for(7)) == 6


def test_te_example_p7():
    reports = list(run_sweep(cfg(p_min=7, p_max=7, checks=("T-E",))))
    assert [(r.d, r.predicted, r.observed, r.status) for r in reports] == [
        (1, -1, -1, "pass"),
        (2, -1, -1, "pass"),
        (4, -1, -1, "pass"),
    ]


def test_decomposition_at_p5_is_skipped():
    reports = list(run_sweep(cfg(p_min=5, p_max=5, checks=("THM2.2",))))
    assert reports and all(r.status == "skipped" and r.reason == "p <= 5" for r in reports)


def test_te_p5_boundary_skip():
    reports = list(run_sweep(cfg(p_min=5, p_max=5, checks=("T-E",))))
    assert [r.d for r in reports] == [1, 4]
    assert all(r.status == "skipped" for r in reports)


def test_completeness_counts():
    # one report per in-hypothesis tuple, nothing else unless asked
    p_lo, p_hi = 7, 29
    reports = list(run_sweep(cfg(p_min=p_lo, p_max=p_hi, checks=("T-A", "T-C", "THM2.2"))))
    expected_ta = expected_tc = expected_thm = 0
    for p in primes_between(p_lo, p_hi):
        n = (p - 1) // 2
        for d in range(1, p):
            expected_tc += legendre(-d, p) == 1
            for m in range(n + 1, p - 1):
                expected_thm += 1
                expected_ta += legendre(d, p) == -1 and (m - n) % 2 == 0
    s = summarize(reports)
    assert s.by_check["T-A"]["pass"] == expected_ta
    assert s.by_check["T-C"]["pass"] == expected_tc
    assert s.by_check["THM2.2"]["pass"] == expected_thm
    assert s.total("skipped") == 0


def test_emit_skipped_accounts_for_every_tuple():
    c = cfg(p_min=13, p_max=13, checks=("T-A",), emit_skipped=True)
    reports = list(run_sweep(c))
    assert len(reports) == 12 * 5


def test_stream_sorted_and_deterministic():
    c = cfg(p_min=5, p_max=19, rng_seed=9)
    first = [r.to_json() for r in run_sweep(c)]
    second = [r.to_json() for r in run_sweep(c)]
    assert first == second
    reports = list(run_sweep(c))
    keys = [r.sort_key() for r in reports]
    assert keys == sorted(keys)


def test_parallel_matches_serial():
    c = cfg(p_min=5, p_max=31, m_mode="tail")
    serial = [r.to_json() for r in run_sweep(c)]
    parallel = [r.to_json() for r in run_sweep(c, jobs=2)]
    assert serial == parallel


def test_all_checks_pass_small_range():
    s = summarize(run_sweep(cfg(p_min=5, p_max=29)))
    assert s.total("fail") == 0
    assert set(s.by_check) == set(CHECK_IDS)


def test_fail_report_carries_witness():
    r = judge("T-C", "sp2", 3, 4, p=7, d=3, m=5)
    assert r.failed
    j = r.to_json()
    assert j["predicted"] == 3 and j["observed"] == 4 and j["modulus"] == 7
    assert judge("T-B", "s", -1, 0, p=5, relation="ne", kind="symbol").passed
    with pytest.raises(ValueError):
        judge("T-B", "s", -1, 0, p=5, relation="lt")


def test_corrupted_formula_is_reported(monkeypatch):
    from qrdet import closed_forms

    real = closed_forms.tC_sp2_closed_form
    monkeypatch.setattr(closed_forms, "tC_sp2_closed_form", lambda p, d: real(p, d) + 1)
    s = summarize(run_sweep(cfg(p_min=7, p_max=13, checks=("T-C",))))
    assert s.total("fail") > 0 and s.total("pass") == 0


def test_tier_presets():
    t1, t2, t3 = (tier_config(k, 42) for k in (1, 2, 3))
    assert (t1.p_max, t1.m_mode, t1.d_mode) == (61, "full", "all")
    assert (t2.p_max, t2.m_mode) == (149, "tail")
    assert (t3.p_min, t3.p_max, t3.d_mode, t3.d_count) == (150, 499, "sampled", 8)
    assert t1.rng_seed == 42
    with pytest.raises(ValueError):
        tier_config(4)


def test_sampled_sweep_runs_on_tier3_prime():
    c = SweepConfig(p_min=151, p_max=151, d_mode="sampled", d_count=2, m_mode="tail",
                    checks=("THM2.2", "T-C", "SUN-PRIOR", "T-E", "EXTENDED"), rng_seed=1)
    s = summarize(prime_reports(151, c))
    assert s.total("fail") == 0 and s.total("pass") > 0


def test_randomized_identities_examples():
    s = run_randomized_identities([7, 13, 101], 300, 42)
    assert s.failures == 0
    assert set(s.primes_seen) == {7, 13, 101}
    again = run_randomized_identities([7, 13, 101], 300, 42)
    assert again.to_json(None) == s.to_json(None)
    with pytest.raises(ValueError):
        run_randomized_identities([7], 0, 1)
    with pytest.raises(ValueError):
        run_randomized_identities([9], 1, 1)
