import pytest

import hamforge

GAUGES = "zero_mode=coulomb,kk_mode=axial"


def test_parse_fixture(fixtures):
	t = hamforge.parse_theory((fixtures / "stueckelberg5d.thy").read_text())
	assert t.name == "stueckelberg5d"
	assert t.dimension == 5
	assert t.compactified
	assert t.fields == ["A", "theta"]
	assert set(t.gauge_sets) >= {"coulomb", "axial"}
	again = hamforge.parse_theory(t.render())
	assert again == t


def test_parse_errors_carry_positions():
	with pytest.raises(ValueError, match=r"^\d+:\d+: "):
		hamforge.parse_theory("theory t { dim 4; }")


def test_analysis_report(fixtures):
	r = hamforge.analyze_file(fixtures / "stueckelberg5d.thy", gauge=GAUGES)
	assert r["exit_code"] == 0
	assert r["dof"] == "4k-1"
	assert [s["name"] for s in r["sectors"]] == ["zero_mode", "kk_mode"]
	for s in r["sectors"]:
		assert s["dirac"]["dof"]["dof"] in (3, 4)
		assert s["fj"]["levels"][-1]["action"] == "invertible"


def test_single_mode_count(fixtures):
	r = hamforge.analyze_file(fixtures / "stueckelberg5d.thy", modes="k=1", gauge="zero_mode=coulomb")
	assert r["dof"] == "3"


def test_sanity_counts(fixtures):
	assert hamforge.analyze_file(fixtures / "maxwell4d.thy", method="dirac")["dof"] == "2"
	assert hamforge.analyze_file(fixtures / "proca4d.thy", method="dirac")["dof"] == "3"


def test_lattice_certification(fixtures):
	r = hamforge.analyze_file(fixtures / "stueckelberg4d.thy", gauge={"main": "coulomb"}, verify_lattice=4)
	records = r["sectors"][0]["lattice"]
	assert records and all(rec["ok"] for rec in records)


def test_usage_errors(fixtures):
	src = (fixtures / "stueckelberg5d.thy").read_text()
	with pytest.raises(hamforge.UsageError):
		hamforge.analyze(src, gauge="zero_mode")
	with pytest.raises(hamforge.UsageError):
		hamforge.analyze(src, modes="k=0")
	with pytest.raises(hamforge.HamforgeError):
		hamforge.analyze(src, gauge={"zero_mode": "missing"})


def test_helpers():
	assert hamforge.count_dof(8, 2, 0) == 2
	assert hamforge.count_dof(8, 0, 2) == 3
	with pytest.raises(hamforge.HamforgeError):
		hamforge.count_dof(8, 0, 1)
	assert hamforge.harmonic_integral("cos", 3, "cos", 3) == (1, 1)
	assert hamforge.harmonic_integral("sin", 2, "cos", 2) == (0, 1)
	assert hamforge.harmonic_integral("const", 0, "const", 0) == (2, 1)
