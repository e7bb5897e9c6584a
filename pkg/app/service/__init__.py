# -*- coding: utf-8 -*-
from . import params_core
from . import closed_forms
from . import fd_solver
from . import constants_chain
from . import harnack_verifier
from . import profiles
from . import scenario_parser
from . import report_writer
