import unittest

from sandcare import fixtures
from sandcare.configuration import Configuration, Perturbation
from sandcare.engine import (
    DissipationKind,
    DissipationPolicy,
    InflowGenerator,
    InflowSchedule,
    ScenarioSpec,
    Strategy,
    detect_collapse,
    generate_dissipation,
    run_scenario,
    run_step,
)
from sandcare.errors import (
    BudgetInfeasibleError,
    EngineError,
    OversubtractionError,
    ScheduleExhaustedError,
    SystemSaturatedError,
)
from sandcare.network import GridSpec, Neighborhood, build_grid
from sandcare.scenario import load_scenario
from sandcare.standard import TieBreak


def _spec(example, **kwargs):
    net = build_grid(GridSpec(example.n, example.neighborhood))
    w = Perturbation.from_deltas(net.p, example.inflow)
    kwargs.setdefault('inflow', InflowSchedule(repeat=w))
    return ScenarioSpec(
        name=example.name,
        network=net,
        ground_state=Configuration.from_rows(example.ground),
        **kwargs
    )


class RunScenarioTest(unittest.TestCase):
    def test_iterated_hub_settles_after_four_inflows(self):
        spec = _spec(fixtures.ITERATED_HUB, strategy=Strategy.STANDARD, steps=4)
        run = run_scenario(spec)

        self.assertEqual(Configuration.from_rows(fixtures.ITERATED_HUB_SETTLED), run.final)
        self.assertEqual(4, len(run.steps))
        self.assertEqual(4, run.cumulative_inflow)
        self.assertEqual(0, run.cumulative_outflow)
        self.assertTrue(run.ledger_closed)
        self.assertFalse(run.balanced)
        self.assertEqual([1, 2, 3], [s.index for s in run.steps[1:]])

    def test_iterated_hub_srh_single_step(self):
        spec = _spec(fixtures.ITERATED_HUB, strategy=Strategy.SRH)
        run = run_scenario(spec)
        self.assertEqual(Configuration.from_rows(fixtures.ITERATED_HUB.srh), run.final)

    def test_no_steps(self):
        spec = _spec(fixtures.CENTRAL_OUTBREAK, steps=0)
        run = run_scenario(spec)
        self.assertEqual([], run.steps)
        self.assertEqual(spec.ground_state, run.final)
        self.assertTrue(run.ledger_closed)

    def test_central_outbreak(self):
        example = fixtures.CENTRAL_OUTBREAK
        run = run_scenario(_spec(example))
        step = run.steps[0]
        self.assertEqual(Configuration.from_rows(example.srh), run.final)
        self.assertEqual(fixtures.CENTRAL_OUTBREAK.indicators[2], step.indicator_toppled.value)
        self.assertEqual(260, run.final.total)

    def test_srh_transient_hub_peak_is_not_a_collapse(self):
        run = run_scenario(load_scenario('central_outbreak'))
        step = run.steps[0]
        self.assertEqual(11, step.peak_hub)
        self.assertEqual(3, step.final.at(41))
        self.assertFalse(step.collapse)
        self.assertEqual([], run.collapse_events)

    def test_second_wave_saturates_the_hub(self):
        example = fixtures.CENTRAL_OUTBREAK
        run = run_scenario(_spec(example, strategy=Strategy.STANDARD, steps=2))
        second = run.steps[1]
        self.assertEqual(12, second.peak_hub)
        self.assertTrue(second.collapse.hub_saturated)
        self.assertFalse(second.collapse.system_saturated)
        self.assertIn(1, [step for step, _ in run.collapse_events])

    def test_explicit_schedule_exhausted(self):
        example = fixtures.HUB_OVERFLOW
        w = Perturbation.from_deltas(9, example.inflow)
        spec = _spec(example, steps=2, inflow=InflowSchedule(explicit=(w,)))
        with self.assertRaises(ScheduleExhaustedError):
            run_scenario(spec)

    def test_saturated_system(self):
        net = build_grid(GridSpec(3, Neighborhood.VON_NEUMANN, with_hub=False))
        spec = ScenarioSpec(
            name='saturated',
            network=net,
            ground_state=Configuration((3,) * 9),
            strategy=Strategy.STANDARD,
            inflow=InflowSchedule(repeat=Perturbation.from_deltas(9, {5: 1})),
            move_cap=50,
        )
        with self.assertRaises(SystemSaturatedError):
            run_step(spec, spec.ground_state, 0)

    def test_saturated_system_with_a_hub(self):
        net = build_grid(GridSpec(3, Neighborhood.VON_NEUMANN))
        spec = ScenarioSpec(
            name='saturated',
            network=net,
            ground_state=Configuration((3,) * 9),
            strategy=Strategy.STANDARD,
            inflow=InflowSchedule(repeat=Perturbation.from_deltas(9, {5: 1})),
            move_cap=50,
        )

        # the hub keeps the patient its full neighbourhood cannot take
        run = run_scenario(spec)
        step = run.steps[0]
        self.assertEqual([], step.trace.moves)
        self.assertEqual(4, step.final.at(5))
        self.assertTrue(step.hub_over_threshold)
        self.assertTrue(step.collapse.hub_saturated)
        self.assertTrue(step.collapse.system_saturated)

        report = run_step(spec.with_strategy(Strategy.SRH), spec.ground_state, 0)
        self.assertEqual(28, report.toppled.total)

    def test_dissipation_keeps_the_ledger(self):
        example = fixtures.TWO_TOPPLINGS
        spec = _spec(
            example,
            steps=3,
            dissipation=DissipationPolicy(DissipationKind.RANDOM, budget=4, seed=5),
        )
        run = run_scenario(spec)
        self.assertEqual(12, run.cumulative_inflow)
        self.assertEqual(12, run.cumulative_outflow)
        self.assertTrue(run.balanced)
        self.assertTrue(run.ledger_closed)
        for step in run.steps:
            self.assertEqual(4, step.zeta.total)
            self.assertEqual(step.toppled.total - 4, step.final.total)

    def test_seeded_runs_repeat(self):
        spec = load_scenario('outbreak_waves')
        first = run_scenario(spec).to_dict()
        second = run_scenario(spec).to_dict()
        self.assertEqual(first, second)
        self.assertEqual(120, first['cumulative_inflow'])
        self.assertEqual(120, first['cumulative_outflow'])
        self.assertTrue(first['ledger_closed'])

    def test_with_seed(self):
        spec = load_scenario('outbreak_waves').with_seed(99)
        self.assertEqual(99, spec.inflow.generator.seed)
        self.assertEqual(99, spec.dissipation.seed)
        self.assertEqual(TieBreak.seeded(99), spec.tiebreak)

        standard = _spec(fixtures.TWO_TOPPLINGS, strategy=Strategy.STANDARD).with_seed(4)
        self.assertEqual(TieBreak.seeded(4), standard.tiebreak)
        self.assertEqual('repeat', standard.inflow.kind)


class InflowTest(unittest.TestCase):
    def test_generator(self):
        generator = InflowGenerator(per_step=10, seed=1, sites=(3, 5, 7))
        w = generator.draw(9, 2)
        self.assertEqual(10, w.total)
        self.assertTrue(set(w.support()) <= {3, 5, 7})
        self.assertEqual(w, generator.draw(9, 2))

    def test_weighted_generator(self):
        generator = InflowGenerator(per_step=6, seed=1, sites=(2, 8), weights=(0, 1))
        self.assertEqual(Perturbation.from_deltas(9, {8: 6}), generator.draw(9, 0))

    def test_zero_weights(self):
        generator = InflowGenerator(per_step=2, sites=(1, 2), weights=(0, 0))
        with self.assertRaises(EngineError):
            generator.draw(9, 0)

    def test_kinds(self):
        self.assertEqual('explicit', InflowSchedule().kind)
        self.assertEqual('repeat', InflowSchedule(repeat=Perturbation.zeros(4)).kind)
        self.assertEqual('generator', InflowSchedule(generator=InflowGenerator(1)).kind)


class DissipationTest(unittest.TestCase):
    def setUp(self):
        self.z = Configuration.from_rows(fixtures.HUB_OVERFLOW.srh)

    def test_none(self):
        zeta = generate_dissipation(DissipationPolicy(), self.z, 0)
        self.assertEqual(Perturbation.zeros(9), zeta)

    def test_zero_budget(self):
        policy = DissipationPolicy(DissipationKind.RANDOM, budget=0)
        self.assertEqual(Perturbation.zeros(9), generate_dissipation(policy, self.z, 0))

    def test_whole_budget(self):
        policy = DissipationPolicy(DissipationKind.RANDOM, budget=self.z.total)
        zeta = generate_dissipation(policy, self.z, 0)
        self.assertEqual(self.z.values, zeta.values)

    def test_random_is_reproducible(self):
        policy = DissipationPolicy(DissipationKind.RANDOM, budget=7, seed=2)
        zeta = generate_dissipation(policy, self.z, 3)
        self.assertEqual(7, zeta.total)
        self.assertEqual(zeta, generate_dissipation(policy, self.z, 3))
        self.assertTrue(all(d <= h for d, h in zip(zeta, self.z)))

    def test_budget_too_large(self):
        policy = DissipationPolicy(DissipationKind.RANDOM, budget=self.z.total + 1)
        with self.assertRaises(BudgetInfeasibleError):
            generate_dissipation(policy, self.z, 0)

    def test_explicit(self):
        zeta = Perturbation.from_deltas(9, {1: 3})
        policy = DissipationPolicy(DissipationKind.EXPLICIT, schedule=(zeta,))
        self.assertEqual(zeta, generate_dissipation(policy, self.z, 0))

        with self.assertRaises(ScheduleExhaustedError):
            generate_dissipation(policy, self.z, 1)

        greedy = DissipationPolicy(
            DissipationKind.EXPLICIT, schedule=(Perturbation.from_deltas(9, {1: 4}),)
        )
        with self.assertRaises(OversubtractionError) as cm:
            generate_dissipation(greedy, self.z, 0)

        self.assertEqual(1, cm.exception.node)


class CollapseTest(unittest.TestCase):
    def setUp(self):
        self.net = build_grid(GridSpec(9))

    def test_peak_hub(self):
        psi = Configuration.from_rows(fixtures.CENTRAL_OUTBREAK.standard)
        status = detect_collapse(self.net, psi, 10, 0, peak_hub=12)
        self.assertTrue(status.hub_saturated)
        self.assertFalse(status.system_saturated)
        self.assertFalse(status.imbalance_warning)
        self.assertEqual(['HubSaturated'], status.flags)

        self.assertFalse(detect_collapse(self.net, psi, 10, 0))

    def test_imbalance(self):
        z = Configuration.from_rows(fixtures.CENTRAL_OUTBREAK.srh)
        self.assertTrue(detect_collapse(self.net, z, 10, 4, dissipating=True).imbalance_warning)
        self.assertFalse(detect_collapse(self.net, z, 10, 4).imbalance_warning)
        self.assertFalse(detect_collapse(self.net, z, 10, 10, dissipating=True))

    def test_system_saturated(self):
        z = Configuration(tuple(8 if v == 41 else 7 for v in range(1, 82)))
        status = detect_collapse(self.net, z, 0, 0)
        self.assertTrue(status.system_saturated)
        self.assertTrue(status.hub_saturated)


if __name__ == '__main__':
    unittest.main()
