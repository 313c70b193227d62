"""Command-line front end.

    python -m KSharpLab.cli profile --n 1 --m 3 --c 0.75
    python -m KSharpLab.cli simulate --manifest run.json
    python -m KSharpLab.cli scale --epsilon 6 --delta 1 --n 1 --m 1
    python -m KSharpLab.cli invariants output/snapshots.json --k 3
    python -m KSharpLab.cli figure --c 0.75

Exit codes: 0 success, 2 invalid arguments, 3 numerical blow-up, 4 I/O failure.
Relative output paths are resolved against $KSHARP_OUTPUT_DIR when it is set.
"""
import argparse
import csv
import json
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from pydantic import ValidationError

from . import diagnostics, hierarchy, snapshots, travwave
from .config import configure_logging, resolve_output
from .exceptions import DomainError, SimulationBlowUp, SnapshotFormatError
from .models import HierarchyParams
from .simulate import initial_state, run

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BLOW_UP = 3
EXIT_IO = 4

FIGURE_PANELS = {
    'a': [(1, 3), (2, 3), (3, 3)],
    'b': [(1, 3), (1, 4), (1, 5)],
}


def _emit_json(document: dict) -> None:
    print(json.dumps(document, sort_keys=True))


def cmd_profile(args) -> int:
    w = travwave.build(HierarchyParams(n=args.n, m=args.m), args.c)
    xi, u = travwave.tabulate(w, args.samples)
    header = travwave.describe(w)
    out = resolve_output(args.out)
    if args.format == 'json':
        snapshots.write_json(out, {**header, 'xi': xi.tolist(), 'u': u.tolist()})
    else:
        sidecar = out.with_suffix('.json')
        if sidecar == out:
            raise DomainError(f'--out {args.out} would be overwritten by its JSON header; '
                              'use --format json or another suffix')
        snapshots.write_csv(out, snapshots.PROFILE_HEADER, zip(xi.tolist(), u.tolist()))
        snapshots.write_json(sidecar, header)
    _emit_json(header)
    return EXIT_OK


def cmd_figure(args) -> int:
    rows = []
    for panel, members in FIGURE_PANELS.items():
        waves = [travwave.build(HierarchyParams(n=n, m=m), args.c) for n, m in members]
        reach = 1.2 * max(w.xi0 for w in waves)
        xi = np.linspace(-reach, reach, args.samples)
        for w in waves:
            for x, u in zip(xi.tolist(), travwave.sample_profile(w, xi).tolist()):
                rows.append([panel, w.p.n, w.p.m, x, u])
    snapshots.write_csv(resolve_output(args.out), snapshots.FIGURE_HEADER, rows)
    return EXIT_OK


def _write_run_outputs(directory: Path, manifest, recorder, record, status: str,
                       final_time: float, mollification_error: float, started: float) -> dict:
    fmt = manifest.outputs.snapshot_format
    recorder.write(directory / f'snapshots.{fmt}', fmt)
    snapshots.write_diagnostics(directory / 'diagnostics.csv', record, 'csv')
    snapshots.write_diagnostics(directory / 'diagnostics.json', record, 'json')
    summary = {
        'status': status,
        'final_time': final_time,
        'samples': len(record.times),
        'mollification_error': mollification_error,
        'drift': diagnostics.drift_summary(record),
        'deterministic': manifest.deterministic,
    }
    if not manifest.deterministic:
        summary['wall_time'] = time.perf_counter() - started
    snapshots.write_json(directory / 'summary.json', summary)
    return summary


def cmd_simulate(args) -> int:
    manifest = snapshots.load_manifest(args.manifest)
    directory = resolve_output(manifest.outputs.directory)
    recorder = snapshots.SnapshotRecorder(manifest.grid, manifest.params,
                                          manifest.outputs.snapshot_every)
    started = time.perf_counter()
    initial, error = initial_state(manifest)
    try:
        record, final = run(initial, manifest.params.hierarchy(), manifest.grid, manifest.solver,
                            manifest.t_end, [recorder], manifest.outputs.diagnostics_every,
                            manifest.outputs.ik)
    except SimulationBlowUp as exc:
        _write_run_outputs(directory, manifest, recorder, exc.record, 'blow-up', exc.state.time,
                           error, started)
        print(f'blow-up: {exc}', file=sys.stderr)
        return EXIT_BLOW_UP
    summary = _write_run_outputs(directory, manifest, recorder, record, 'ok', final.time, error,
                                 started)
    for name, value in summary['drift'].items():
        print(f'drift {name}: {value:.3e}')
    return EXIT_OK


def cmd_scale(args) -> int:
    p = HierarchyParams(n=args.n, m=args.m)
    form = hierarchy.scales_from_coefficients(args.epsilon, args.delta, p, args.vee)
    epsilon, delta = hierarchy.coefficients_from_scales(form, p)
    error = max(abs(epsilon - args.epsilon) / args.epsilon, abs(delta - args.delta) / args.delta)
    print(f'ell = {form.ell!r}')
    print(f'tau = {form.tau!r}')
    print(f'V = {form.vee!r}')
    print(f'round-trip epsilon = {epsilon!r}, delta = {delta!r}, max relative error = {error:.3e}')
    return EXIT_OK


def cmd_invariants(args) -> int:
    snapshot = snapshots.read_snapshot(args.snapshot)
    n = args.n if args.n is not None else (snapshot.params.n if snapshot.params else None)
    m = args.m if args.m is not None else (snapshot.params.m if snapshot.params else None)
    if n is None or m is None:
        raise DomainError('--n and --m are required for CSV snapshots')
    header, rows = diagnostics.invariants_table(snapshot.states(), snapshot.grid,
                                                HierarchyParams(n=n, m=m), args.k, args.scheme)
    writer = csv.writer(sys.stdout, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    if args.out:
        snapshots.write_csv(resolve_output(args.out), header, rows)
    return EXIT_OK


def _orders(text: str) -> list[int]:
    try:
        orders = [int(k) for k in text.split(',') if k.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated integers, got {text!r}')
    return orders


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='ksharp', description='K#(n,m) peakompacton laboratory')
    parser.add_argument('-v', '--verbose', action='count', default=0)
    commands = parser.add_subparsers(dest='command', required=True)

    profile = commands.add_parser('profile', help='sample a peakompacton profile')
    profile.add_argument('--n', type=int, default=1)
    profile.add_argument('--m', type=int, default=3)
    profile.add_argument('--c', type=float, default=0.75)
    profile.add_argument('--samples', type=int, default=401)
    profile.add_argument('--out', default='profile.csv')
    profile.add_argument('--format', choices=['csv', 'json'], default='csv')
    profile.set_defaults(handler=cmd_profile)

    simulate = commands.add_parser('simulate', help='run a manifest')
    simulate.add_argument('--manifest', required=True, type=Path)
    simulate.set_defaults(handler=cmd_simulate)

    scale = commands.add_parser('scale', help='characteristic scales for given coefficients')
    scale.add_argument('--epsilon', type=float, required=True)
    scale.add_argument('--delta', type=float, required=True)
    scale.add_argument('--n', type=int, required=True)
    scale.add_argument('--m', type=int, required=True)
    scale.add_argument('--vee', '--V', type=float, default=1.0)
    scale.set_defaults(handler=cmd_scale)

    invariants = commands.add_parser('invariants', help='M, P, H and I_k of a snapshot file')
    invariants.add_argument('snapshot', type=Path)
    invariants.add_argument('--n', type=int)
    invariants.add_argument('--m', type=int)
    invariants.add_argument('--k', type=_orders, default=[])
    invariants.add_argument('--scheme', choices=['fourier_collocation', 'centered_fd4'],
                            default='fourier_collocation')
    invariants.add_argument('--out')
    invariants.set_defaults(handler=cmd_invariants)

    figure = commands.add_parser('figure', help='profiles of both illustration panels')
    figure.add_argument('--c', type=float, default=0.75)
    figure.add_argument('--samples', type=int, default=401)
    figure.add_argument('--out', default='figure.csv')
    figure.set_defaults(handler=cmd_figure)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    configure_logging([logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)])
    try:
        return args.handler(args)
    except SnapshotFormatError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_IO
    except (DomainError, ValidationError) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_IO


if __name__ == '__main__':
    sys.exit(main())
