"""
Experiment commands

    flask --app app estimate STATE_FILE
    flask --app app gw-sweep | random-bench | mps-bench | ghz-readout
    flask --app app make-state --family w --n 3 w3.json

Option values resolve as: app config default < --config file < explicit
flag. A --config file is either a JSON object keyed by option name, a result
document from `estimate` (its "config" entry is used) or a CSV written by one
of the campaigns (its "# config:" line is used). The resolved options and
master seed are echoed into every output.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict

import click
import numpy as np
from click.core import ParameterSource
from flask import Blueprint, current_app

from vdge.errors import InputError, OutOfRange
from vdge.middleware import exit_codes
from vdge.models import CspsaConfig, MpsState, OracleConfig, ShotConfig
from vdge.services import DenseStates, ExperimentService, MpsStates, ProductAnsatz, StateIO

logger = logging.getLogger(__name__)

bp = Blueprint('experiments', __name__, cli_group=None)

EXPLICIT_SOURCES = (ParameterSource.COMMANDLINE, ParameterSource.ENVIRONMENT)

# option name -> config key shared by every VDGE-running command
VDGE_DEFAULTS = {
    'shots': 'VDGE_SHOTS',
    'readout_flip': 'VDGE_READOUT_FLIP',
    'iterations': 'VDGE_ITERATIONS',
    'repetitions': 'VDGE_REPETITIONS',
    'gain_a': 'VDGE_GAIN_A',
    'gain_b': 'VDGE_GAIN_B',
    'stability': 'VDGE_STABILITY',
    'gain_s': 'VDGE_GAIN_S',
    'gain_t': 'VDGE_GAIN_T',
    'seed': 'VDGE_SEED',
    'workers': 'VDGE_WORKERS',
    'oracle_starts': 'ORACLE_STARTS',
    'oracle_max_sweeps': 'ORACLE_MAX_SWEEPS',
    'oracle_tol': 'ORACLE_TOL',
}


def vdge_options(f):
    """Options common to every command that runs VDGE"""
    options = [
        click.option('--config', 'config_path', type=click.Path(dir_okay=False),
                     help='JSON options file, estimate document or campaign CSV'),
        click.option('--shots', type=click.IntRange(min=1), help='Ensemble size N per evaluation'),
        click.option('--readout-flip', type=click.FloatRange(0.0, 0.5), help='Readout bit-flip probability p'),
        click.option('--iterations', type=click.IntRange(min=1), help='CSPSA iterations K'),
        click.option('--repetitions', type=click.IntRange(min=1), help='Independent repetitions R'),
        click.option('--gain-a', type=float, help='Gain numerator a'),
        click.option('--gain-b', type=float, help='Perturbation numerator b'),
        click.option('--stability', type=float, help='Stability offset A'),
        click.option('--gain-s', type=float, help='Gain exponent s'),
        click.option('--gain-t', type=float, help='Perturbation exponent t'),
        click.option('--seed', type=click.IntRange(min=0), help='Master seed (generated and echoed when omitted)'),
        click.option('--workers', type=click.IntRange(min=1), help='Worker threads (default: CPU count)'),
        click.option('--oracle-starts', type=click.IntRange(min=1), help='Reference solver random starts'),
        click.option('--oracle-max-sweeps', type=click.IntRange(min=1), help='Reference solver sweep limit'),
        click.option('--oracle-tol', type=float, help='Reference solver convergence tolerance'),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _config_source(paper_scale: bool) -> Dict[str, Any]:
    if not paper_scale:
        return current_app.config
    from config import PaperConfig
    return {key: getattr(PaperConfig, key) for key in dir(PaperConfig) if key.isupper()}


def _read_config_file(path: str) -> Dict[str, Any]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"config: cannot read {path} ({e.strerror})")
    if text.startswith('#'):
        lines = [line for line in text.splitlines() if line.startswith('# config: ')]
        if not lines:
            raise InputError(f"config: {path} has no '# config:' line")
        text = lines[0][len('# config: '):]
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"config: {path} is not valid JSON ({e.msg})")
    if isinstance(data, dict) and isinstance(data.get('config'), dict):
        data = data['config']
    if not isinstance(data, dict):
        raise InputError(f"config: {path} must hold a JSON object")
    return data


def resolve_options(ctx: click.Context, defaults: Dict[str, Any]) -> Dict[str, Any]:
    """
    Merge config defaults, the --config file and explicit flags

    `defaults` maps every resolvable option name to its fallback value.
    Values from the file are cast with the option's own click type.
    """
    path = ctx.params.get('config_path')
    from_file = _read_config_file(path) if path else {}
    unknown = sorted(set(from_file) - set(defaults))
    if unknown:
        raise InputError(f"config: unknown option(s) {', '.join(unknown)}")

    params = {param.name: param for param in ctx.command.params}
    resolved = {}
    for name, default in defaults.items():
        if ctx.get_parameter_source(name) in EXPLICIT_SOURCES:
            value = ctx.params[name]
        elif name in from_file and from_file[name] is not None:
            value = params[name].type_cast_value(ctx, from_file[name])
        else:
            value = default
        resolved[name] = list(value) if isinstance(value, (tuple, list)) else value

    if resolved.get('seed') is None and 'seed' in resolved:
        resolved['seed'] = int(np.random.SeedSequence().generate_state(1)[0])
        logger.info(f"No seed given, using {resolved['seed']}")
    return resolved


def _paper_scale(ctx: click.Context) -> bool:
    if ctx.get_parameter_source('paper_scale') in EXPLICIT_SOURCES:
        return bool(ctx.params['paper_scale'])
    path = ctx.params.get('config_path')
    return bool(_read_config_file(path).get('paper_scale', False)) if path else False


def _vdge_defaults(source: Dict[str, Any], **overrides) -> Dict[str, Any]:
    defaults = {name: source[key] for name, key in VDGE_DEFAULTS.items()}
    defaults.update(overrides)
    return defaults


def _shot_cfg(options: Dict[str, Any]) -> ShotConfig:
    return ShotConfig(shots=options['shots'], readout_flip=options['readout_flip'])


def _cspsa_cfg(options: Dict[str, Any]) -> CspsaConfig:
    return CspsaConfig(a=options['gain_a'], b=options['gain_b'], A=options['stability'],
                       s=options['gain_s'], t=options['gain_t'],
                       iterations=options['iterations'], seed=options['seed'])


def _oracle_cfg(options: Dict[str, Any]) -> OracleConfig:
    return OracleConfig(starts=options['oracle_starts'], max_sweeps=options['oracle_max_sweeps'],
                        tol=options['oracle_tol'], seed=options['seed'])


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def _write_campaign(frame, output, schema, options):
    path = output or f'{schema}.csv'
    ExperimentService.write_csv(frame, path, schema, options)
    click.echo(f"{len(frame)} rows written to {path} (seed {options['seed']})")


@bp.cli.command('estimate')
@click.argument('state_file', type=click.Path(dir_okay=False))
@click.option('--backend', type=click.Choice(['auto', 'dense', 'mps']), default='auto',
              help='Simulate dense, as MPS, or as stored in the file')
@click.option('--records/--no-records', default=True, help='Include per-iteration traces')
@click.option('--output', type=click.Path(dir_okay=False), help='Result document path (default: stdout)')
@vdge_options
@click.pass_context
@exit_codes
def estimate(ctx, state_file, backend, records, output, **_):
    """Estimate the geometric measure of entanglement of a stored state."""
    options = resolve_options(ctx, dict(_vdge_defaults(current_app.config), backend='auto', records=True))
    state = StateIO.load(state_file)
    if options['backend'] == 'dense' and isinstance(state, MpsState):
        state = MpsStates.mps_to_dense(state)
    elif options['backend'] == 'mps' and not isinstance(state, MpsState):
        raise InputError("backend: 'mps' needs an MPS state file")

    document = ExperimentService.estimate(state, _shot_cfg(options), _cspsa_cfg(options), _oracle_cfg(options),
                                          options['repetitions'], options['seed'], options['workers'])
    if not options['records']:
        for run in document['runs']:
            run.pop('records', None)
    document['state_file'] = str(state_file)
    document['seed'] = options['seed']
    document['config'] = options

    text = json.dumps(document, indent=2, default=_json_default)
    if output:
        Path(output).write_text(text + '\n')
        click.echo(f"E* = {document['gme']:.6f} (reference {document['oracle']['gme']:.6f}), written to {output}")
    else:
        click.echo(text)


@bp.cli.command('gw-sweep')
@click.option('--phi', 'phis', type=float, multiple=True, help='Relative phase; repeat for several')
@click.option('--s-count', type=click.IntRange(min=2), help='Equally spaced s values in [0, 1]')
@click.option('--trials', type=click.IntRange(min=1), help='Independent best-of-R estimates per point')
@click.option('--resamples', type=click.IntRange(min=1), help='Bootstrap resamples')
@click.option('--confidence', type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True),
              help='Bootstrap confidence level')
@click.option('--paper-scale', is_flag=True, help='Budgets of the original study (long-running)')
@click.option('--output', type=click.Path(dir_okay=False), help='CSV path (default: gw_sweep.csv)')
@vdge_options
@click.pass_context
@exit_codes
def gw_sweep(ctx, output, **_):
    """Sweep the GHZ-W superposition family over s for every phi."""
    paper_scale = _paper_scale(ctx)
    source = _config_source(paper_scale)
    options = resolve_options(ctx, _vdge_defaults(
        source,
        phis=list(source['GW_PHIS']),
        s_count=source['GW_S_COUNT'],
        trials=source['GW_TRIALS'],
        resamples=source['BOOTSTRAP_RESAMPLES'],
        confidence=source['BOOTSTRAP_CONFIDENCE'],
        paper_scale=paper_scale,
    ))
    frame = ExperimentService.gw_sweep(options['phis'], options['s_count'], _shot_cfg(options),
                                       _cspsa_cfg(options), _oracle_cfg(options), options['repetitions'],
                                       options['trials'], options['seed'], options['workers'],
                                       options['resamples'], options['confidence'])
    _write_campaign(frame, output, 'gw_sweep', options)


@bp.cli.command('random-bench')
@click.option('--n', 'ns', type=click.IntRange(min=1), multiple=True, help='Qubit count; repeat for several')
@click.option('--states', type=click.IntRange(min=1), help='Haar-random states per qubit count')
@click.option('--paper-scale', is_flag=True, help='Budgets of the original study (long-running)')
@click.option('--output', type=click.Path(dir_okay=False), help='CSV path (default: random_bench.csv)')
@vdge_options
@click.pass_context
@exit_codes
def random_bench(ctx, output, **_):
    """Convergence of the estimation error on Haar-random states."""
    paper_scale = _paper_scale(ctx)
    source = _config_source(paper_scale)
    options = resolve_options(ctx, _vdge_defaults(
        source,
        repetitions=source['RANDOM_REPETITIONS'],
        ns=list(source['RANDOM_QUBITS']),
        states=source['RANDOM_STATES'],
        paper_scale=paper_scale,
    ))
    frame = ExperimentService.random_bench(options['ns'], options['states'], _shot_cfg(options),
                                           _cspsa_cfg(options), _oracle_cfg(options), options['repetitions'],
                                           options['seed'], options['workers'])
    _write_campaign(frame, output, 'random_bench', options)


@bp.cli.command('mps-bench')
@click.option('--n', type=click.IntRange(min=2), help='Chain length')
@click.option('--lam', type=click.FloatRange(min=0.0), help='Perturbation variance lambda')
@click.option('--family', type=click.Choice(['ghz', 'w']), help='Unperturbed family')
@click.option('--states', type=click.IntRange(min=1), help='Perturbed states in the ensemble')
@click.option('--paper-scale', is_flag=True, help='Budgets of the original study (long-running)')
@click.option('--output', type=click.Path(dir_okay=False), help='CSV path (default: mps_bench.csv)')
@vdge_options
@click.pass_context
@exit_codes
def mps_bench(ctx, output, **_):
    """Perturbed GHZ/W chains on the MPS backend, started at the unperturbed optimum."""
    paper_scale = _paper_scale(ctx)
    source = _config_source(paper_scale)
    options = resolve_options(ctx, _vdge_defaults(
        source,
        iterations=source['MPS_ITERATIONS'],
        repetitions=source['MPS_REPETITIONS'],
        n=source['MPS_QUBITS'],
        lam=source['MPS_LAMBDA'],
        family='ghz',
        states=source['MPS_STATES'],
        paper_scale=paper_scale,
    ))
    frame = ExperimentService.mps_bench(options['n'], options['lam'], options['family'], options['states'],
                                        _shot_cfg(options), _cspsa_cfg(options), _oracle_cfg(options),
                                        options['repetitions'], options['seed'], options['workers'])
    _write_campaign(frame, output, 'mps_bench', options)


@bp.cli.command('ghz-readout')
@click.option('--n', 'ns', type=click.IntRange(min=2), multiple=True, help='Qubit count; repeat for several')
@click.option('--output', type=click.Path(dir_okay=False), help='CSV path (default: ghz_readout.csv)')
@vdge_options
@click.pass_context
@exit_codes
def ghz_readout(ctx, output, **_):
    """GHZ estimates under readout bit flips, per-iteration E(theta +/-)."""
    source = current_app.config
    options = resolve_options(ctx, _vdge_defaults(
        source,
        readout_flip=source['READOUT_FLIP'],
        repetitions=source['READOUT_REPETITIONS'],
        ns=list(source['READOUT_QUBITS']),
    ))
    frame = ExperimentService.ghz_readout(options['ns'], _shot_cfg(options), _cspsa_cfg(options),
                                          options['repetitions'], options['seed'], options['workers'])
    _write_campaign(frame, output, 'ghz_readout', options)


@bp.cli.command('make-state')
@click.argument('output', type=click.Path(dir_okay=False))
@click.option('--family', type=click.Choice(['ghz', 'w', 'gw', 'haar', 'product']), required=True)
@click.option('--n', type=click.IntRange(min=1), default=3, show_default=True, help='Qubit count')
@click.option('--s', 's_value', type=click.FloatRange(0.0, 1.0), default=0.5, show_default=True,
              help='GHZ weight of the GW state')
@click.option('--phi', type=float, default=0.0, show_default=True, help='Relative phase of the GW state')
@click.option('--backend', type=click.Choice(['dense', 'mps']), default='dense', show_default=True)
@click.option('--lam', type=click.FloatRange(min=0.0), default=0.0, show_default=True,
              help='MPS perturbation variance')
@click.option('--seed', type=click.IntRange(min=0), help='Seed for haar, product and perturbed states')
@exit_codes
def make_state(output, family, n, s_value, phi, backend, lam, seed):
    """Write a state file for the estimate command."""
    rng = np.random.default_rng(seed)
    if backend == 'mps':
        if family == 'ghz':
            state = MpsStates.mps_ghz(n)
        elif family == 'w':
            state = MpsStates.mps_w(n)
        else:
            raise OutOfRange(f"family '{family}' has no MPS constructor (use ghz or w)")
        if lam > 0:
            state = MpsStates.perturb_mps(state, lam, rng)
    else:
        if lam > 0:
            raise OutOfRange("--lam applies to the mps backend only")
        if family == 'ghz':
            state = DenseStates.make_ghz(n)
        elif family == 'w':
            state = DenseStates.make_w(n)
        elif family == 'gw':
            state = DenseStates.make_gw(s_value, phi)
        elif family == 'haar':
            state = DenseStates.haar_random_state(n, rng)
        else:
            state = ProductAnsatz.params_to_dense_product(ProductAnsatz.haar_random_params(n, rng))

    StateIO.save(state, output)
    click.echo(f"{family} state with {state.n} qubits written to {output}")
