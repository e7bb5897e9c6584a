# -*- coding: utf-8 -*-

from .params import Params, Jet2
from .closed_form import SupersolutionParams, CounterexampleParams
from .grid import GridState, BoundaryCondition, Trajectory
from .cylinder import Cylinder, HarnackReport, ComparisonReport
from .chain import ChainPlan, ConstantLedger
from .scenario import (
    Scenario, ReportRow, SolverSettings, ProbeSettings, ConstantSettings, BarrierSettings
)
