"""Machine-readable analysis report (JSON).

Complex numbers are stored as ``[re, im]`` pairs and non-finite floats as
the strings ``"inf"``, ``"-inf"`` and ``"nan"`` so the file stays valid JSON
and reads back to the same values.  There is no timestamp, so identical
input and configuration give a byte-identical file.
"""
import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .pipeline import AnalysisConfig

SCHEMA_VERSION = 1


def _enc(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return x


def _dec(x):
    if isinstance(x, str) and x in ("nan", "inf", "-inf"):
        return float(x)
    return x


@dataclass(frozen=True)
class PoleEntry:
    lam: complex
    residue: complex
    frequency_hz: float
    reliable: bool

    def to_dict(self):
        return {
            "lambda": [_enc(self.lam.real), _enc(self.lam.imag)],
            "residue": [_enc(self.residue.real), _enc(self.residue.imag)],
            "frequency_hz": _enc(self.frequency_hz),
            "reliable": self.reliable,
        }

    @classmethod
    def from_dict(cls, d):
        lam = complex(_dec(d["lambda"][0]), _dec(d["lambda"][1]))
        res = complex(_dec(d["residue"][0]), _dec(d["residue"][1]))
        return cls(lam, res, _dec(d["frequency_hz"]), bool(d["reliable"]))


@dataclass(frozen=True)
class ReportEntry:
    """Result for one FRF (one mixing index ``b``)."""

    label: str
    b: int
    n_samples: int
    verdict: str
    margin_db: float
    peak_frequency_hz: float
    threshold_db: float
    unstable_peak_db: float
    error_floor_db: float
    mode: str
    stable_fraction: float
    unstable_fraction: float
    poles: tuple = ()
    model_order: int = None
    pole_error: str = None

    @classmethod
    def from_result(cls, result):
        rep = result.report
        fs, fu = result.energy_split()
        poles, order = (), None
        if result.poles is not None:
            poles = tuple(PoleEntry(complex(p.lam), complex(p.residue), float(p.frequency),
                                    bool(p.reliable)) for p in result.poles)
            order = int(result.poles.model_order)
        return cls(
            label=result.label, b=int(result.b),
            n_samples=int(result.decomposition.freqs.size),
            verdict=rep.verdict, margin_db=rep.margin_db,
            peak_frequency_hz=rep.peak_frequency, threshold_db=rep.threshold_db,
            unstable_peak_db=rep.unstable_peak_db, error_floor_db=rep.error_floor_db,
            mode=rep.mode, stable_fraction=float(fs), unstable_fraction=float(fu),
            poles=poles, model_order=order, pole_error=result.pole_error,
        )

    def to_dict(self):
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = [p.to_dict() for p in v] if f.name == "poles" else _enc(v)
        return out

    @classmethod
    def from_dict(cls, d):
        kw = {k: _dec(v) for k, v in d.items() if k != "poles"}
        kw["poles"] = tuple(PoleEntry.from_dict(p) for p in d.get("poles", []))
        return cls(**kw)


@dataclass(frozen=True)
class Report:
    config: AnalysisConfig
    entries: tuple = field(default_factory=tuple)

    @property
    def verdict(self):
        """``"unstable"`` if any entry is unstable."""
        return "unstable" if any(e.verdict == "unstable" for e in self.entries) else "stable"

    @classmethod
    def from_results(cls, config, results):
        return cls(config, tuple(ReportEntry.from_result(r) for r in results))

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "verdict": self.verdict,
            "config": {k: _enc(v) for k, v in asdict(self.config).items()},
            "entries": [e.to_dict() for e in self.entries],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d):
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        config = AnalysisConfig(**{k: _dec(v) for k, v in d["config"].items()})
        return cls(config, tuple(ReportEntry.from_dict(e) for e in d["entries"]))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def write(self, path):
        path = Path(path)
        path.write_text(self.to_json())
        return path

    @classmethod
    def read(cls, path):
        return cls.from_json(Path(path).read_text())
