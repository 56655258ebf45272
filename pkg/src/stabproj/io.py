"""Reading and writing FRF samples as CSV.

Format::

    # optional comment lines; "# b = 1" sets the mixing index
    freq_hz,re_ohm,im_ohm
    1000000,1.0,0.0
    ...
"""
import csv
import re
from pathlib import Path

import numpy as np

from .errors import NonMonotonic, ParseError
from .frf import Frf

HEADER = ("freq_hz", "re_ohm", "im_ohm")
_B_TAG = re.compile(r"^#\s*b\s*[=:]\s*([+-]?\d+)\s*$")


def parse_csv(path, label=None):
    """Read an FRF from ``path``.

    Raises
    ------
    ParseError
        Missing or wrong header, wrong column count or a non-numeric field;
        the message and ``.line`` carry the 1-based line number.
    NonMonotonic
        Frequencies not strictly increasing.
    """
    path = Path(path)
    b = 0
    rows = []
    header_seen = False
    with path.open(newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            if text.startswith("#"):
                m = _B_TAG.match(text)
                if m:
                    b = int(m.group(1))
                continue
            fields = next(csv.reader([text]))
            fields = [x.strip() for x in fields]
            if not header_seen:
                if tuple(x.lower() for x in fields) != HEADER:
                    raise ParseError(f"expected header {','.join(HEADER)!r}", lineno)
                header_seen = True
                continue
            if len(fields) != 3:
                raise ParseError(f"expected 3 fields, got {len(fields)}", lineno)
            try:
                f, re_, im = (float(x) for x in fields)
            except ValueError:
                raise ParseError(f"non-numeric field in {text!r}", lineno) from None
            if rows and f <= rows[-1][0]:
                raise NonMonotonic(
                    f"line {lineno}: frequency {f!r} does not exceed {rows[-1][0]!r}")
            rows.append((f, re_, im, lineno))
    if not header_seen:
        raise ParseError("file has no header line")
    data = np.array([r[:3] for r in rows], dtype=float).reshape(-1, 3)
    return Frf(data[:, 0], data[:, 1] + 1j * data[:, 2], b=b,
               label=path.stem if label is None else label)


def write_csv(frf, path, comment=None):
    """Write ``frf`` in the format read by :func:`parse_csv` (17 significant digits)."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        if comment:
            for line in str(comment).splitlines():
                fh.write(f"# {line}\n")
        if frf.b:
            fh.write(f"# b = {frf.b}\n")
        fh.write(",".join(HEADER) + "\n")
        for f, v in zip(frf.freqs, frf.values):
            fh.write(f"{f:.17g},{v.real:.17g},{v.imag:.17g}\n")
    return path


def write_curves(result, path):
    """Plot-ready curves of one analysis: frequency and three levels in dB Ohm."""
    f, s_db, u_db, e_db = result.curves()
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write("freq_hz,stable_db,unstable_db,error_db\n")
        for row in zip(f, s_db, u_db, e_db):
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
    return path
