"""On-disk formats.

CSV files are UTF-8 with a fixed header row (RFC 4180 quoting, '\\n' line
ends); JSON documents follow the schemas in KSharpLab/schemas/.

    profile          xi,u
    figure           panel,n,m,xi,u
    snapshot (csv)   t,x,u
    diagnostics      t,mass,momentum,energy,peak_location,peak_height[,I<k>...]
"""
import csv
import json
from pathlib import Path
from typing import Any, Optional

import numpy as np
from pydantic import ValidationError

from .exceptions import SnapshotFormatError
from .models import DiagnosticsRecord, Grid, HierarchyParams, RunManifest, State, WaveParams

SCHEMA_DIR = Path(__file__).parent / 'schemas'

PROFILE_HEADER = ['xi', 'u']
FIGURE_HEADER = ['panel', 'n', 'm', 'xi', 'u']
SNAPSHOT_HEADER = ['t', 'x', 'u']
DIAGNOSTICS_HEADER = ['t', 'mass', 'momentum', 'energy', 'peak_location', 'peak_height']


def load_schema(name: str) -> dict:
    with open(SCHEMA_DIR / f'{name}.schema.json', encoding='utf-8') as handle:
        return json.load(handle)


def _prepare(path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(path: Path, header: list[str], rows) -> Path:
    path = _prepare(path)
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_json(path: Path, document: Any) -> Path:
    path = _prepare(path)
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        json.dump(document, handle, indent=2, allow_nan=False)
        handle.write('\n')
    return path


class SnapshotRecorder:
    """Observer keeping the field every `every` steps (first and last always)."""

    def __init__(self, grid: Grid, params: WaveParams, every: int = 0):
        self.grid = grid
        self.params = params
        self.every = every
        self.times: list[float] = []
        self.fields: list[list[float]] = []

    def __call__(self, state: State, step: int, final: bool) -> None:
        if step == 0 or final or (self.every and step % self.every == 0):
            self.times.append(state.time)
            self.fields.append([float(v) for v in state.values])

    def document(self) -> dict:
        return snapshot_document(self.grid, self.params, self.times, self.fields)

    def write(self, path: Path, fmt: str) -> Path:
        if fmt == 'csv':
            return write_snapshot_csv(path, self.grid, self.times, self.fields)
        return write_json(path, self.document())


def snapshot_document(grid: Grid, params: WaveParams, times, fields) -> dict:
    return {
        'grid': {'length': grid.length, 'npoints': grid.npoints},
        'params': {'n': params.n, 'm': params.m, 'c': params.c},
        'times': [float(t) for t in times],
        'fields': [[float(v) for v in field] for field in fields],
    }


def write_snapshot_csv(path: Path, grid: Grid, times, fields) -> Path:
    x = grid.points()
    rows = ((float(t), float(xj), float(uj)) for t, field in zip(times, fields)
            for xj, uj in zip(x, field))
    return write_csv(path, SNAPSHOT_HEADER, rows)


class Snapshot:
    def __init__(self, grid: Grid, times: list[float], fields: list[np.ndarray],
                 params: Optional[HierarchyParams] = None):
        self.grid = grid
        self.times = times
        self.fields = fields
        self.params = params

    def states(self) -> list[State]:
        return [State(t, field) for t, field in zip(self.times, self.fields)]


def _snapshot_from_json(path: Path) -> Snapshot:
    with open(path, encoding='utf-8') as handle:
        document = json.load(handle)
    grid = Grid(**document['grid'])
    params = HierarchyParams(n=document['params']['n'], m=document['params']['m'])
    fields = [np.asarray(field, dtype=float) for field in document['fields']]
    times = [float(t) for t in document['times']]
    if len(times) != len(fields) or any(len(f) != grid.npoints for f in fields):
        raise SnapshotFormatError(f'{path}: times and fields do not match the grid')
    return Snapshot(grid, times, fields, params)


def _snapshot_from_csv(path: Path) -> Snapshot:
    with open(path, encoding='utf-8', newline='') as handle:
        reader = csv.reader(handle)
        if next(reader, None) != SNAPSHOT_HEADER:
            raise SnapshotFormatError(f'{path}: expected header {",".join(SNAPSHOT_HEADER)}')
        columns: dict[float, tuple[list[float], list[float]]] = {}
        for row in reader:
            t, x, u = (float(value) for value in row)
            xs, us = columns.setdefault(t, ([], []))
            xs.append(x)
            us.append(u)
    if not columns:
        raise SnapshotFormatError(f'{path}: no samples')
    xs, _ = next(iter(columns.values()))
    npoints = len(xs)
    if npoints < 2 or any(len(us) != npoints for _, us in columns.values()):
        raise SnapshotFormatError(f'{path}: every time needs the same number of samples')
    grid = Grid(length=npoints * (xs[1] - xs[0]), npoints=npoints)
    times = list(columns)
    return Snapshot(grid, times, [np.asarray(columns[t][1]) for t in times])


def read_snapshot(path: Path) -> Snapshot:
    path = Path(path)
    try:
        if path.suffix == '.json':
            return _snapshot_from_json(path)
        return _snapshot_from_csv(path)
    except (KeyError, TypeError, ValueError, StopIteration, ValidationError) as exc:
        if isinstance(exc, SnapshotFormatError):
            raise
        raise SnapshotFormatError(f'{path}: {exc}') from exc


def diagnostics_rows(record: DiagnosticsRecord):
    orders = sorted(record.ik)
    header = DIAGNOSTICS_HEADER + [f'I{k}' for k in orders]
    rows = []
    for i, t in enumerate(record.times):
        rows.append([t, record.mass[i], record.momentum[i], record.energy[i],
                     record.peak_location[i], record.peak_height[i],
                     *(record.ik[k][i] for k in orders)])
    return header, rows


def write_diagnostics(path: Path, record: DiagnosticsRecord, fmt: str) -> Path:
    if fmt == 'csv':
        header, rows = diagnostics_rows(record)
        return write_csv(path, header, rows)
    document = record.model_dump()
    document['ik'] = {str(k): v for k, v in sorted(document['ik'].items())}
    return write_json(path, document)


def _nest(flat: dict[str, str]) -> dict:
    nested: dict = {}
    for key, value in flat.items():
        node = nested
        *parents, leaf = key.split('.')
        for parent in parents:
            node = node.setdefault(parent, {})
        node[leaf] = value
    return nested


def parse_key_values(text: str) -> dict:
    """`section.key = value` lines; blank lines and '#' comments are skipped."""
    flat = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise SnapshotFormatError(f'line {number}: expected key = value')
        key, value = (part.strip() for part in line.split('=', 1))
        flat[key] = value
    return _nest(flat)


def load_manifest(path: Path) -> RunManifest:
    path = Path(path)
    text = path.read_text(encoding='utf-8')
    try:
        if path.suffix == '.json':
            return RunManifest.model_validate_json(text)
        return RunManifest.model_validate(parse_key_values(text))
    except ValidationError as exc:
        raise SnapshotFormatError(f'{path}: {exc}') from exc


def manifest_to_key_values(manifest: RunManifest) -> str:
    lines = []

    def walk(prefix: str, node: Any) -> None:
        if isinstance(node, dict):
            for key, value in node.items():
                walk(f'{prefix}.{key}' if prefix else key, value)
        elif node is not None:
            if isinstance(node, list):
                node = ','.join(str(v) for v in node)
            elif isinstance(node, bool):
                node = str(node).lower()
            lines.append(f'{prefix} = {node}')

    walk('', manifest.model_dump())
    return '\n'.join(lines) + '\n'
