import dataclasses
import unittest

from sandcare import fixtures
from sandcare.verify import verify_worked_examples


class VerifyTest(unittest.TestCase):
    def test_all_examples_reproduce(self):
        table = verify_worked_examples()
        self.assertEqual([], [r.name for r in table.failures])
        self.assertTrue(table.passed)
        self.assertIn('iterated-hub: standard outcome after four steps', [r.name for r in table.rows])

        text = table.render()
        last = text.strip().splitlines()[-1]
        self.assertEqual('%d/%d checks passed' % (len(table.rows), len(table.rows)), last)

    def test_notes_are_kept(self):
        table = verify_worked_examples([fixtures.CENTRAL_OUTBREAK])
        rows = {r.name: r for r in table.rows}
        row = rows['central-outbreak: indicator on srh outcome']
        self.assertTrue(row.passed)
        self.assertIn('4.5', row.note)
        self.assertIn('(published as 4.5', table.render())

    def test_mismatch_is_reported(self):
        example = fixtures.HUB_OVERFLOW
        srh = [list(r) for r in example.srh]
        srh[0][0] += 1
        broken = dataclasses.replace(example, srh=tuple(tuple(r) for r in srh))

        table = verify_worked_examples([broken])
        self.assertFalse(table.passed)
        failed = [r.name for r in table.failures]
        self.assertIn('hub-overflow: srh outcome', failed)

        row = table.failures[0]
        self.assertEqual('4 4 2 / 6 3 3 / 5 4 4', row.expected)
        self.assertEqual('3 4 2 / 6 3 3 / 5 4 4', row.actual)
        self.assertIn('FAIL', table.render())


if __name__ == '__main__':
    unittest.main()
