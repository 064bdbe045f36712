"""
Dataset, curve panel and oracle files

Dataset CSV:

    #x_grid: s1,...,sn1
    #y_grid: r1,...,rn2
    #p: <int>
    X_1,...,X_n1,Y_1,...,Y_n2,Z_1,...,Z_p      (one row per subject)

Curve panel CSV (rolling backtests):

    #points: t1,...,tm
    #p: <int>
    V_1,...,V_m,Z_1,...,Z_p

Reals are written with repr, the shortest string that round-trips exactly.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np
import structlog

from src.data.dataset import FunctionalDataset
from src.data.grid import SampleGrid, make_grid
from src.data.simulation import OracleModel
from src.errors import GridError, ParseError
from src.models import OracleFile

logger = structlog.get_logger()


def format_row(values: Iterable[float]) -> str:
    return ",".join(repr(float(v)) for v in values)


def _parse_floats(text: str, line: int, path: str) -> np.ndarray:
    text = text.strip()
    if not text:
        return np.empty(0)
    values = []
    for token in text.split(","):
        token = token.strip()
        try:
            values.append(float(token))
        except ValueError:
            raise ParseError(f"not a number: {token!r}", line=line, path=path) from None
    return np.asarray(values)


def _read_sections(path: Path, required: tuple[str, ...]) -> tuple[dict, list[tuple[int, str]]]:
    """Split a file into '#key: value' headers and numbered data lines"""
    headers: dict[str, tuple[int, str]] = {}
    rows: list[tuple[int, str]] = []
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e}", path=str(path)) from e

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if rows:
                raise ParseError("header line after data rows", line=number, path=str(path))
            key, sep, value = line[1:].partition(":")
            if not sep:
                raise ParseError(f"malformed header {line!r}", line=number, path=str(path))
            headers[key.strip()] = (number, value)
        else:
            rows.append((number, line))

    for key in required:
        if key not in headers:
            raise ParseError(f"missing #{key} header", line=1, path=str(path))
    if not rows:
        raise ParseError("no data rows", line=len(text.splitlines()) or 1, path=str(path))
    return headers, rows


def _header_grid(headers: dict, key: str, path: str) -> SampleGrid:
    line, value = headers[key]
    points = _parse_floats(value, line, path)
    try:
        return make_grid(points)
    except GridError as e:
        raise ParseError(f"invalid {key}: {e}", line=line, path=path) from e


def _header_int(headers: dict, key: str, path: str) -> int:
    line, value = headers[key]
    try:
        number = int(value.strip())
    except ValueError:
        raise ParseError(f"#{key} must be an integer, got {value.strip()!r}", line=line, path=path) from None
    if number < 0:
        raise ParseError(f"#{key} must be >= 0", line=line, path=path)
    return number


def _data_matrix(rows: list[tuple[int, str]], width: int, path: str) -> np.ndarray:
    matrix = np.empty((len(rows), width))
    for i, (line, text) in enumerate(rows):
        values = _parse_floats(text, line, path)
        if values.shape[0] != width:
            raise ParseError(f"expected {width} values, got {values.shape[0]}", line=line, path=path)
        matrix[i] = values
    return matrix


def load_csv(path) -> FunctionalDataset:
    """
    Read a dataset CSV

    Args:
        path: File to read

    Returns:
        FunctionalDataset with one column per data row

    Raises:
        ParseError: malformed header, ragged row or invalid grid point
    """
    path = Path(path)
    headers, rows = _read_sections(path, ("x_grid", "y_grid", "p"))
    x_grid = _header_grid(headers, "x_grid", str(path))
    y_grid = _header_grid(headers, "y_grid", str(path))
    p = _header_int(headers, "p", str(path))

    n1, n2 = x_grid.size, y_grid.size
    matrix = _data_matrix(rows, n1 + n2 + p, str(path))
    dataset = FunctionalDataset(
        x_grid=x_grid,
        y_grid=y_grid,
        X=matrix[:, :n1].T,
        Y=matrix[:, n1:n1 + n2].T,
        Z=matrix[:, n1 + n2:].T.reshape(p, len(rows)),
    )
    logger.debug("dataset_loaded", path=str(path), n1=n1, n2=n2, T=dataset.T, p=p)
    return dataset


def save_csv(dataset: FunctionalDataset, path) -> Path:
    """Write a dataset CSV; output is byte-identical for identical datasets"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        f"#x_grid: {format_row(dataset.x_grid.points)}",
        f"#y_grid: {format_row(dataset.y_grid.points)}",
        f"#p: {dataset.p}",
    ]
    for t in range(dataset.T):
        lines.append(format_row(np.concatenate([dataset.X[:, t], dataset.Y[:, t], dataset.Z[:, t]])))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.debug("dataset_saved", path=str(path), T=dataset.T)
    return path


@dataclass(frozen=True)
class CurvePanel:
    """Curves observed on one common grid over [0, horizon]"""
    points: np.ndarray
    values: np.ndarray
    Z: np.ndarray

    @property
    def size(self) -> int:
        return self.values.shape[1]

    @property
    def p(self) -> int:
        return self.Z.shape[0]


def load_curve_panel(path) -> CurvePanel:
    """Read a curve panel CSV (#points / #p headers)"""
    path = Path(path)
    headers, rows = _read_sections(path, ("points", "p"))
    line, value = headers["points"]
    points = _parse_floats(value, line, str(path))
    if points.size == 0 or np.any(np.diff(points) <= 0.0) or points[0] < 0.0:
        raise ParseError("#points must be nonnegative and strictly increasing", line=line, path=str(path))
    p = _header_int(headers, "p", str(path))
    matrix = _data_matrix(rows, points.size + p, str(path))
    return CurvePanel(
        points=points,
        values=matrix[:, :points.size].T,
        Z=matrix[:, points.size:].T.reshape(p, len(rows)),
    )


def save_curve_panel(panel: CurvePanel, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"#points: {format_row(panel.points)}", f"#p: {panel.p}"]
    for t in range(panel.size):
        lines.append(format_row(np.concatenate([panel.values[:, t], panel.Z[:, t]])))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def save_oracle(
    oracle: OracleModel,
    seed: int,
    path,
    train_x_basis: Optional[np.ndarray] = None,
    test_x_basis: Optional[np.ndarray] = None,
) -> Path:
    """Write the simulation truth as JSON"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    record = OracleFile(
        kind=oracle.kind,
        kappa=oracle.kappa,
        q=oracle.q,
        p=oracle.p,
        seed=seed,
        lam=None if oracle.lam is None else oracle.lam.tolist(),
        b=None if oracle.b is None else oracle.b.tolist(),
        train_x_basis=[] if train_x_basis is None else np.asarray(train_x_basis).tolist(),
        test_x_basis=[] if test_x_basis is None else np.asarray(test_x_basis).tolist(),
    )
    path.write_text(record.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def load_oracle(path) -> tuple[OracleModel, OracleFile]:
    path = Path(path)
    try:
        record = OracleFile.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ParseError(f"cannot read file: {e}", path=str(path)) from e
    oracle = OracleModel(
        kind=record.kind,
        kappa=record.kappa,
        q=record.q,
        p=record.p,
        lam=None if record.lam is None else np.asarray(record.lam),
        b=None if record.b is None else np.asarray(record.b),
    )
    return oracle, record
