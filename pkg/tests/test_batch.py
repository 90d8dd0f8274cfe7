import unittest

from tornado.testing import AsyncTestCase, gen_test

from sandcare.batch import run_batch
from sandcare.configuration import Configuration, Perturbation
from sandcare.engine import InflowSchedule, ScenarioSpec, Strategy, run_scenario
from sandcare.errors import EngineError, ScheduleExhaustedError
from sandcare.network import GridSpec, build_grid
from sandcare.scenario import load_scenario, shipped_scenarios


class BatchTest(AsyncTestCase):
    @gen_test
    async def test_matches_sequential_runs(self):
        specs = [load_scenario(name) for name in shipped_scenarios()]
        result = await run_batch(specs, workers=3)

        self.assertTrue(result.ok)
        self.assertEqual(sorted(s.name for s in specs), list(result.reports))
        for spec in specs:
            self.assertEqual(run_scenario(spec).to_dict(), result.reports[spec.name].to_dict())

    @gen_test
    async def test_failures_are_collected(self):
        net = build_grid(GridSpec(3))
        good = ScenarioSpec(
            'good', net, Configuration.zeros(9), inflow=InflowSchedule(repeat=Perturbation.zeros(9))
        )
        bad = ScenarioSpec(
            'bad',
            net,
            Configuration.zeros(9),
            strategy=Strategy.STANDARD,
            steps=2,
            inflow=InflowSchedule(explicit=(Perturbation.zeros(9),)),
        )
        result = await run_batch([bad, good])

        self.assertFalse(result.ok)
        self.assertEqual(['good'], list(result.reports))
        self.assertIsInstance(result.errors['bad'], ScheduleExhaustedError)

    @gen_test
    async def test_duplicate_names(self):
        spec = load_scenario('two_topplings')
        with self.assertRaises(EngineError):
            await run_batch([spec, spec])


if __name__ == '__main__':
    unittest.main()
