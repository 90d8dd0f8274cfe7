# Copyright (c) 2026 sandcare contributors
# This file is part of sandcare.
#
# sandcare is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.


"""Scenario files: a single JSON document describing a network, a ground
state and the multi-step experiment to run on it.

Perturbations (inflows and dissipations) are written either as flat
row-major arrays, as rows of a grid, or sparsely as ``{"<node>": amount}``.
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional

from sandcare import settings
from sandcare.configuration import Configuration, NodeVector, Perturbation
from sandcare.engine import (
    DissipationKind,
    DissipationPolicy,
    InflowGenerator,
    InflowSchedule,
    ScenarioSpec,
    Strategy,
)
from sandcare.errors import (
    NetworkError,
    SandpileError,
    ScenarioError,
    ScenarioSyntaxError,
    ScenarioValidationError,
)
from sandcare.network import GridSpec, Neighborhood, Network, build_graph, build_grid
from sandcare.sandpile import unstable_nodes
from sandcare.standard import TieBreak

_TOP_LEVEL_KEYS = {
    'name',
    'network',
    'ground_state',
    'strategy',
    'steps',
    'inflow',
    'dissipation',
    'tiebreak',
    'caps',
    'margin',
    'output',
}
_OUTPUT_KINDS = {'csv', 'report', 'image'}
_EXTENSION = '.json'


def _natural(value: Any, field: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ScenarioSyntaxError(
            'expected an integer >= %d, got %s' % (minimum, json.dumps(value)), field=field
        )

    return value


def _object(value: Any, field: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise ScenarioSyntaxError('expected an object', field=field)

    return value


def _single_key(value: Any, field: str, allowed) -> str:
    keys = list(_object(value, field))
    if len(keys) != 1 or keys[0] not in allowed:
        raise ScenarioSyntaxError(
            'expected exactly one of %s' % ', '.join(sorted(allowed)), field=field
        )

    return keys[0]


def _vector(cls, value: Any, p: int, field: str) -> NodeVector:
    if isinstance(value, dict):
        deltas = {}
        for key, amount in value.items():
            try:
                node = int(key)

            except ValueError:
                raise ScenarioSyntaxError('"%s" is not a node id' % key, field=field)

            if not 1 <= node <= p:
                raise ScenarioValidationError(
                    '%s: node %d is outside 1..%d' % (field, node, p)
                )

            deltas[node] = _natural(amount, '%s.%s' % (field, key))

        return cls.from_deltas(p, deltas)

    if not isinstance(value, list):
        raise ScenarioSyntaxError('expected an array or an object', field=field)

    if value and all(isinstance(row, list) for row in value):
        value = [x for row in value for x in row]

    values = [_natural(x, '%s[%d]' % (field, i)) for i, x in enumerate(value)]
    if len(values) != p:
        raise ScenarioValidationError('%s: expected %d entries, got %d' % (field, p, len(values)))

    return cls(tuple(values))


def _parse_network(value: Any) -> Network:
    kind = _single_key(value, 'network', {'grid', 'graph'})
    body = _object(value[kind], 'network.%s' % kind)
    field = 'network.%s' % kind
    try:
        if kind == 'grid':
            name = body.get('neighborhood', Neighborhood.MOORE.value)
            try:
                neighborhood = Neighborhood(name)

            except ValueError:
                raise ScenarioSyntaxError(
                    'unknown neighborhood "%s"' % name, field=field + '.neighborhood'
                )

            with_hub = body.get('hub')
            if with_hub is not None and not isinstance(with_hub, bool):
                raise ScenarioSyntaxError('expected true or false', field=field + '.hub')

            spec = GridSpec(_natural(body.get('n'), field + '.n', 1), neighborhood, with_hub)
            return build_grid(spec)

        p = _natural(body.get('p'), field + '.p', 1)
        edges = body.get('edges', [])
        if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
            raise ScenarioSyntaxError('expected an array of node pairs', field=field + '.edges')

        hub = body.get('hub')
        if hub is not None:
            hub = _natural(hub, field + '.hub', 1)

        thresholds = body.get('thresholds')
        if thresholds is not None:
            thresholds = list(_vector(Perturbation, thresholds, p, field + '.thresholds'))

        off_slots = body.get('off_slots')
        if off_slots is not None:
            off_slots = list(_vector(Perturbation, off_slots, p, field + '.off_slots'))

        return build_graph(p, edges, hub, thresholds, off_slots)

    except NetworkError as e:
        raise ScenarioValidationError('invalid network: %s' % e) from e


def _parse_schedule(value: Any, p: int, field: str) -> tuple:
    if not isinstance(value, list):
        raise ScenarioSyntaxError('expected an array of perturbations', field=field)

    return tuple(_vector(Perturbation, w, p, '%s[%d]' % (field, i)) for i, w in enumerate(value))


def _parse_inflow(value: Any, p: int) -> InflowSchedule:
    if value is None:
        return InflowSchedule(repeat=Perturbation.zeros(p))

    kind = _single_key(value, 'inflow', {'schedule', 'repeat', 'generator'})
    if kind == 'schedule':
        return InflowSchedule(explicit=_parse_schedule(value[kind], p, 'inflow.schedule'))

    if kind == 'repeat':
        return InflowSchedule(repeat=_vector(Perturbation, value[kind], p, 'inflow.repeat'))

    body = _object(value[kind], 'inflow.generator')
    sites = body.get('sites', 'all')
    if sites == 'all':
        sites = ()

    elif isinstance(sites, list):
        sites = tuple(_natural(s, 'inflow.generator.sites', 1) for s in sites)
        if any(s > p for s in sites):
            raise ScenarioValidationError('inflow.generator.sites: nodes must be in 1..%d' % p)

    else:
        raise ScenarioSyntaxError('expected "all" or an array', field='inflow.generator.sites')

    weights = tuple(
        _natural(x, 'inflow.generator.weights') for x in body.get('weights', [])
    )
    if weights and len(weights) != (len(sites) or p):
        raise ScenarioValidationError('inflow.generator.weights: one weight per site expected')

    if weights and not sum(weights):
        raise ScenarioValidationError(
            'inflow.generator.weights: at least one weight must be positive'
        )

    return InflowSchedule(
        generator=InflowGenerator(
            per_step=_natural(body.get('per_step'), 'inflow.generator.per_step'),
            seed=_natural(body.get('seed', 0), 'inflow.generator.seed'),
            sites=sites,
            weights=weights,
        )
    )


def _parse_dissipation(value: Any, p: int) -> DissipationPolicy:
    if value is None or value == DissipationKind.NONE.value:
        return DissipationPolicy()

    kind = _single_key(value, 'dissipation', {'schedule', 'random'})
    if kind == 'schedule':
        return DissipationPolicy(
            kind=DissipationKind.EXPLICIT,
            schedule=_parse_schedule(value[kind], p, 'dissipation.schedule'),
        )

    body = _object(value[kind], 'dissipation.random')
    return DissipationPolicy(
        kind=DissipationKind.RANDOM,
        budget=_natural(body.get('budget'), 'dissipation.random.budget'),
        seed=_natural(body.get('seed', 0), 'dissipation.random.seed'),
    )


def _parse_tiebreak(value: Any) -> TieBreak:
    if value is None or value == 'lowest_id':
        return TieBreak.lowest_id()

    _single_key(value, 'tiebreak', {'seed'})
    return TieBreak.seeded(_natural(value['seed'], 'tiebreak.seed'))


def _parse_output(value: Any) -> Dict[str, str]:
    if value is None:
        return {}

    output = _object(value, 'output')
    for kind, path in output.items():
        if kind not in _OUTPUT_KINDS:
            raise ScenarioSyntaxError('unknown output kind "%s"' % kind, field='output')

        if not isinstance(path, str):
            raise ScenarioSyntaxError('expected a file path', field='output.%s' % kind)

    return dict(output)


def _validate(spec: ScenarioSpec) -> None:
    net = spec.network
    overflowing = [v for v in unstable_nodes(net, spec.ground_state) if v != net.hub]
    if overflowing:
        raise ScenarioValidationError(
            'ground state is not almost stable: nodes %s overflow' % overflowing
        )

    if spec.strategy is Strategy.SRH and net.hub is None:
        raise ScenarioValidationError('strategy "srh" needs a network with a hub')

    if spec.inflow.kind == 'explicit' and len(spec.inflow.explicit) != spec.steps:
        raise ScenarioValidationError(
            'inflow schedule has %d entries for %d steps' % (len(spec.inflow.explicit), spec.steps)
        )

    dissipation = spec.dissipation
    if dissipation.kind is DissipationKind.EXPLICIT and len(dissipation.schedule) != spec.steps:
        raise ScenarioValidationError(
            'dissipation schedule has %d entries for %d steps'
            % (len(dissipation.schedule), spec.steps)
        )


def parse_scenario(text: str, name: Optional[str] = None) -> ScenarioSpec:
    """Parse and validate a scenario document.

    Args:
        text: The JSON document.
        name: Used when the document has no ``name`` key.

    Raises:
        ScenarioSyntaxError: The document is malformed; ``line`` and
            ``field`` locate the problem.
        ScenarioValidationError: The document is well formed but describes
            an impossible scenario (unstable ground state, hub on an even
            grid, strategy "srh" without a hub, wrong vector lengths...).
    """

    try:
        doc = json.loads(text)

    except json.JSONDecodeError as e:
        raise ScenarioSyntaxError(e.msg, line=e.lineno) from e

    doc = _object(doc, '<document>')
    unknown = sorted(set(doc) - _TOP_LEVEL_KEYS)
    if unknown:
        raise ScenarioSyntaxError('unknown key', field=unknown[0])

    if 'network' not in doc or 'ground_state' not in doc:
        raise ScenarioSyntaxError(
            'missing key', field='network' if 'network' not in doc else 'ground_state'
        )

    net = _parse_network(doc['network'])
    try:
        ground = _vector(Configuration, doc['ground_state'], net.p, 'ground_state')

    except SandpileError as e:
        raise ScenarioValidationError(str(e)) from e

    strategy_name = doc.get('strategy', Strategy.SRH.value)
    try:
        strategy = Strategy(strategy_name)

    except ValueError:
        raise ScenarioSyntaxError('unknown strategy "%s"' % strategy_name, field='strategy')

    inflow = _parse_inflow(doc.get('inflow'), net.p)
    default_steps = len(inflow.explicit) if inflow.kind == 'explicit' and inflow.explicit else 1
    caps = _object(doc.get('caps', {}), 'caps')
    margin = doc.get('margin')

    spec = ScenarioSpec(
        name=doc.get('name') or name or 'scenario',
        network=net,
        ground_state=ground,
        strategy=strategy,
        steps=_natural(doc.get('steps', default_steps), 'steps'),
        inflow=inflow,
        dissipation=_parse_dissipation(doc.get('dissipation'), net.p),
        tiebreak=_parse_tiebreak(doc.get('tiebreak')),
        topple_cap=_natural(caps['topplings'], 'caps.topplings', 1) if 'topplings' in caps else None,
        move_cap=_natural(caps['moves'], 'caps.moves', 1) if 'moves' in caps else None,
        margin=_natural(margin, 'margin') if margin is not None else None,
        output=_parse_output(doc.get('output')),
    )

    _validate(spec)
    return spec


def _network_doc(net: Network) -> Dict[str, Any]:
    if net.grid is not None:
        grid = {'n': net.grid.n, 'neighborhood': net.grid.neighborhood.value}
        if net.grid.with_hub is not None:
            grid['hub'] = net.grid.with_hub

        return {'grid': grid}

    return {
        'graph': {
            'p': net.p,
            'edges': [list(e) for e in sorted(net.edges)],
            'hub': net.hub,
            'thresholds': list(net.thresholds),
            'off_slots': list(net.off_slots),
        }
    }


def scenario_doc(spec: ScenarioSpec) -> Dict[str, Any]:
    doc = {
        'name': spec.name,
        'network': _network_doc(spec.network),
        'ground_state': list(spec.ground_state),
        'strategy': spec.strategy.value,
        'steps': spec.steps,
    }

    inflow = spec.inflow
    if inflow.kind == 'generator':
        g = inflow.generator
        generator = {
            'sites': list(g.sites) if g.sites else 'all',
            'per_step': g.per_step,
            'seed': g.seed,
        }
        if g.weights:
            generator['weights'] = list(g.weights)

        doc['inflow'] = {'generator': generator}

    elif inflow.kind == 'repeat':
        doc['inflow'] = {'repeat': list(inflow.repeat)}

    else:
        doc['inflow'] = {'schedule': [list(w) for w in inflow.explicit]}

    dissipation = spec.dissipation
    if dissipation.kind is DissipationKind.EXPLICIT:
        doc['dissipation'] = {'schedule': [list(z) for z in dissipation.schedule]}

    elif dissipation.kind is DissipationKind.RANDOM:
        doc['dissipation'] = {'random': {'budget': dissipation.budget, 'seed': dissipation.seed}}

    else:
        doc['dissipation'] = DissipationKind.NONE.value

    if spec.tiebreak.seed is None:
        doc['tiebreak'] = 'lowest_id'

    else:
        doc['tiebreak'] = {'seed': spec.tiebreak.seed}

    caps = {}
    if spec.topple_cap is not None:
        caps['topplings'] = spec.topple_cap

    if spec.move_cap is not None:
        caps['moves'] = spec.move_cap

    if caps:
        doc['caps'] = caps

    if spec.margin is not None:
        doc['margin'] = spec.margin

    if spec.output:
        doc['output'] = dict(spec.output)

    return doc


def serialize_scenario(spec: ScenarioSpec) -> str:
    return json.dumps(scenario_doc(spec), indent=2) + '\n'


def shipped_scenarios() -> List[str]:
    try:
        names = os.listdir(settings.SCENARIO_PATH)

    except OSError:
        return []

    return sorted(n[: -len(_EXTENSION)] for n in names if n.endswith(_EXTENSION))


def load_scenario(path: str) -> ScenarioSpec:
    """Load a scenario from ``path``, or the shipped scenario of that name."""

    if not os.path.exists(path) and path in shipped_scenarios():
        path = os.path.join(settings.SCENARIO_PATH, path + _EXTENSION)

    logging.debug('loading scenario from "%s"' % path)
    try:
        with open(path, encoding='utf-8') as f:
            text = f.read()

    except (OSError, UnicodeDecodeError) as e:
        raise ScenarioError('cannot read scenario "%s": %s' % (path, e)) from e

    name = os.path.splitext(os.path.basename(path))[0]
    return parse_scenario(text, name=name)
