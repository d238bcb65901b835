"""Dirac and Faddeev-Jackiw constraint analysis of gauge field theories."""

import json
from pathlib import Path

from ._hamforge import (
	HamforgeError,
	Theory,
	UnsupportedError,
	UsageError,
	analyze_json,
	analyze_text,
	count_dof,
	harmonic_integral,
	parse_gauge_option,
	parse_theory,
)

__all__ = [
	"HamforgeError",
	"Theory",
	"UnsupportedError",
	"UsageError",
	"analyze",
	"analyze_file",
	"analyze_text",
	"count_dof",
	"harmonic_integral",
	"parse_gauge_option",
	"parse_theory",
]


def analyze(source, method="both", modes="symbolic", gauge=None, verify_lattice=None, input_name="<string>"):
	"""Run the analysis on DSL source and return the report as a dict."""
	if isinstance(gauge, str):
		gauge = parse_gauge_option(gauge)
	text = analyze_json(source, method, modes, gauge or {}, verify_lattice, input_name)
	return json.loads(text)


def analyze_file(path, **kwargs):
	path = Path(path)
	kwargs.setdefault("input_name", path.name)
	return analyze(path.read_text(), **kwargs)
