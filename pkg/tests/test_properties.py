from stlopt.properties import run_property_suite


def test_suite_passes_at_small_sample_count():
    report = run_property_suite(samples=60, seed=42)
    failing = [c.name for c in report.checks if not c.passed]
    assert report.passed, failing


def test_report_lists_every_family():
    report = run_property_suite(samples=40, seed=42)
    names = {c.name for c in report.checks}
    for expected in (
        "soundness/space",
        "soundness/agm",
        "soundness/avg",
        "soundness/new",
        "soundness/smooth",
        "soundness/lse-negative-control",
        "lse/approximation-bound",
        "limits/new-approaches-min",
        "scale-invariance/min",
        "scale-invariance/new",
        "scale-invariance/agm-negative-control",
        "shadow-lifting/agm",
        "shadow-lifting/new",
        "shadow-lifting/min-negative-control",
        "smoothness/finite-difference",
        "idempotency/table",
        "determinism/evaluate",
    ):
        assert expected in names


def test_report_text_is_deterministic():
    a = run_property_suite(samples=30, seed=11).text()
    b = run_property_suite(samples=30, seed=11).text()
    assert a == b
    assert "PASS" in a


def test_lse_witness_found_at_default_seed():
    report = run_property_suite(samples=120, seed=42)
    control = next(c for c in report.checks if c.name == "soundness/lse-negative-control")
    assert control.passed
    assert "lse" in control.detail
