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

"""Exception hierarchy shared by all sandcare modules."""

from typing import Optional


class SandcareError(Exception):
    """Base class of every error raised by sandcare."""


# network

class NetworkError(SandcareError):
    pass


class EvenSideWithHubError(NetworkError):
    pass


class OutOfRangeError(NetworkError):
    pass


class SelfLoopError(NetworkError):
    pass


class DuplicateEdgeError(NetworkError):
    pass


class DisconnectedError(NetworkError):
    pass


class ThresholdBelowDegreeError(NetworkError):
    pass


class UnknownNodeError(NetworkError):
    pass


class NoHubError(NetworkError):
    pass


# sandpile

class SandpileError(SandcareError):
    pass


class LengthMismatchError(SandpileError):
    pass


class NotUnstableError(SandpileError):
    pass


class NotAlmostStableError(SandpileError):
    pass


class NonTerminationError(SandpileError):
    pass


class SystemSaturatedError(NonTerminationError):
    """No almost-stable target exists: the load exceeds the total capability."""


class OversubtractionError(SandpileError):
    def __init__(self, node: int, amount: int, available: int):
        super().__init__(
            'cannot remove %d patients from node %d holding %d' % (amount, node, available)
        )
        self.node = node
        self.amount = amount
        self.available = available


# standard strategy

class StrategyError(SandcareError):
    pass


class NoDestinationError(StrategyError):
    pass


# metrics

class MetricsError(SandcareError):
    pass


class ZeroInflowError(MetricsError):
    pass


class MismatchedScenarioError(MetricsError):
    pass


# engine

class EngineError(SandcareError):
    pass


class ScheduleExhaustedError(EngineError):
    pass


class BudgetInfeasibleError(EngineError):
    pass


# scenario files and rendering

class ScenarioError(SandcareError):
    pass


class ScenarioSyntaxError(ScenarioError):
    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        location = []
        if line is not None:
            location.append('line %d' % line)

        if field:
            location.append('field "%s"' % field)

        if location:
            message = '%s (%s)' % (message, ', '.join(location))

        super().__init__(message)
        self.line = line
        self.field = field


class ScenarioValidationError(ScenarioError):
    pass


class RenderError(SandcareError):
    pass


class NotAGridError(RenderError):
    pass


class OutputError(SandcareError):
    pass
