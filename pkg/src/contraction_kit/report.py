"""CSV output: summary rows, trajectory dumps, certification sample dumps.

Floats are written with 17 significant digits so values round-trip exactly.
"""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

SUMMARY_HEADER = [
    "command",
    "system",
    "norm",
    "rate_estimate",
    "certified",
    "worst_ratio",
    "passed",
    "samples",
    "wall_s",
]


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


@dataclass
class ReportRow:
    command: str
    system_name: str
    norm_kind: str
    rate_estimate: Optional[float] = None
    certified: Optional[bool] = None
    worst_ratio: Optional[float] = None
    passed: Optional[bool] = None
    sample_count: Optional[int] = None
    wall_time_seconds: float = 0.0

    def cells(self):
        return [
            fmt(self.command),
            fmt(self.system_name),
            fmt(self.norm_kind),
            fmt(self.rate_estimate),
            fmt(self.certified),
            fmt(self.worst_ratio),
            fmt(self.passed),
            fmt(self.sample_count),
            fmt(float(self.wall_time_seconds)),
        ]


def _write(path, header, rows):
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_trajectory(path, times, states, v_identity, v_rho):
    n = states.shape[1]
    header = ["t"] + [f"x_{i + 1}" for i in range(n)] + ["V_identity", "V_rho"]
    rows = (
        [fmt(float(t))] + [fmt(float(a)) for a in x] + [fmt(float(vi)), fmt(float(vr))]
        for t, x, vi, vr in zip(times, states, v_identity, v_rho)
    )
    _write(Path(path), header, rows)


def write_cert_dump(path, samples, measures):
    n = samples.shape[1]
    header = ["sample_index"] + [f"x_{i + 1}" for i in range(n)] + ["mu"]
    rows = ([str(k)] + [fmt(float(a)) for a in x] + [fmt(float(m))] for k, (x, m) in enumerate(zip(samples, measures)))
    _write(Path(path), header, rows)


def write_audit_dump(path, records):
    header = ["sample_index", "measure_side", "lmi_side", "status"]
    rows = ([str(k), fmt(r.measure_side), fmt(r.lmi_side), r.status] for k, r in enumerate(records))
    _write(Path(path), header, rows)


def emit_report(rows, directory, trajectories=None, certifications=None):
    """Write ``summary.csv`` plus optional trajectory and certification dumps.

    ``trajectories`` maps a file stem to ``(times, states, V_identity, V_rho)``;
    ``certifications`` maps a file stem to a :class:`CertificationReport`.
    Returns the list of written paths.
    """
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    p = out / "summary.csv"
    _write(p, SUMMARY_HEADER, (r.cells() for r in rows))
    written.append(p)
    for name, (t, x, vi, vr) in (trajectories or {}).items():
        p = out / f"traj_{name}.csv"
        write_trajectory(p, t, x, vi, vr)
        written.append(p)
    for name, rep in (certifications or {}).items():
        p = out / f"cert_{name}.csv"
        write_cert_dump(p, rep.samples, rep.measures)
        written.append(p)
    return written
