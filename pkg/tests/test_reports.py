import json

import pytest

from hilbsq import reports


def roundtrip(report):
    data = json.loads(report.to_json())
    assert data == report.to_dict()
    again = reports.Report.from_dict(data)
    assert again.to_dict() == report.to_dict()
    return data


def test_pell_report():
    report = reports.pell_report(61, 1)
    data = roundtrip(report)
    assert data["results"]["fundamental_solution"]["x"] == "1766319049"
    assert all(c["status"] == "pass" for c in data["checks"])
    assert not report.has_failure


def test_pell_report_minus8():
    report = reports.pell_report(56, -8)
    data = roundtrip(report)
    assert data["results"]["has_solution"] is False
    assert data["results"]["class_representatives"] == []
    assert data["results"]["reduced_certificate_modulus"] == "8"
    assert any(c.name == "no-solutions" for c in report.checks)


def test_pell_report_square_d():
    with pytest.raises(ValueError):
        reports.pell_report(4, 1)


def test_bcns_report():
    report = reports.bcns_report(2)
    data = roundtrip(report)
    assert data["results"]["exists"] is True
    assert data["results"]["d_class"]["pretty"] == "[L] - delta"
    for t, reason_bit in ((4, "square"), (5, "solvable"), (3, "no solution")):
        rep = reports.bcns_report(t)
        assert rep.results["exists"] is False
        assert reason_bit in rep.results["reason"]
    assert report.checks, "verify-style reports carry checks"


def test_family_report():
    report = reports.family_report("A", 2)
    data = roundtrip(report)
    assert [row["t"] for row in data["results"]["rows"]] == ["3250", "62002"]
    assert all(c["status"] == "pass" for c in data["checks"])

    report_b = reports.family_report("B", 1)
    statuses = {c.name: c.status for c in report_b.checks}
    assert statuses["family-B-reference-coefficient"] == "discrepancy"
    assert not report_b.has_failure

    with pytest.raises(ValueError):
        reports.family_report("C", 1)


def test_beauville_report():
    report = reports.beauville_report(1)
    data = roundtrip(report)
    assert data["results"]["kappa2"]["generator"] == "59*H - 8*W - 57*delta"
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["kappa1-reference-class"] == "discrepancy"
    assert statuses["kappa2-generator-closed-form"] == "pass"
    assert not report.has_failure


def test_theorem2_report():
    report = reports.theorem2_report(1)
    data = roundtrip(report)
    assert data["results"]["rank3"]["invariant_gram"] == [["2", "0"], ["0", "-2"]]
    assert data["results"]["rank23"]["complement_invariant_factors"] == ["2"]
    assert all(c.status == "pass" for c in report.checks)


def test_lattice_info_named():
    report = reports.lattice_info_report("U")
    data = roundtrip(report)
    assert data["results"]["discriminant"] == "-1"
    assert data["results"]["unimodular"] is True
    info = reports.lattice_info_report("L23")
    assert info.results["rank"] == "23"
    assert info.results["signature"] == {"n_plus": "3", "n_minus": "20", "n_zero": "0"}
    q2 = reports.lattice_info_report("Q2")
    assert q2.results["gram"] == [["4", "16"], ["16", "2"]]
    ns = reports.lattice_info_report("NS(Q1)")
    assert ns.results["rank"] == "3"
    e8m = reports.lattice_info_report("E8(-1)")
    assert e8m.results["discriminant"] == "1"
    assert e8m.results["signature"]["n_minus"] == "8"


def test_lattice_info_gram_file(tmp_path):
    path = tmp_path / "gram.json"
    path.write_text(json.dumps([[0, 1], [1, 0]]))
    report = reports.lattice_info_report(str(path))
    assert report.results["discriminant"] == "-1"
    # entries may arrive as decimal strings
    path2 = tmp_path / "gram2.json"
    path2.write_text(json.dumps([["2", "0"], ["0", "-2"]]))
    report2 = reports.lattice_info_report(str(path2))
    assert report2.results["discriminant_group"] == ["2", "2"]


def test_lattice_info_unknown():
    with pytest.raises(ValueError):
        reports.lattice_info_report("K3")


def test_format_class():
    assert reports.format_class((59, -8, -57), ("H", "W", "delta")) == (
        "59*H - 8*W - 57*delta"
    )
    assert reports.format_class((1, 0, -1), ("H", "W", "delta")) == "H - delta"
    assert reports.format_class((0, 0, 0), ("H", "W", "delta")) == "0"
    assert reports.format_class((-1, 1), ("a", "b")) == "-a + b"


def test_verify_all_report_small():
    report = reports.verify_all_report(n_max=1, k_max=1, sn_max=1, coeff_bound=100)
    data = roundtrip(report)
    assert not report.has_failure
    statuses = {c.status for c in report.checks}
    assert statuses <= {"pass", "discrepancy"}
    assert int(data["results"]["total_checks"]) >= 20
    assert int(data["results"]["discrepancy"]) == 2
