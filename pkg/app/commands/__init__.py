# -*- coding: utf-8 -*-
from .audits import RangeCheck, SupersolutionAudit, CounterexampleAudit
from .constants import Constants, Chain
from .solves import SolveRadial, Solve2D, Harnack, Compare
