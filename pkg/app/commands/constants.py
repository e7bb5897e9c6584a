# -*- coding: utf-8 -*-

import numpy as np

from app import log, config
from app.commands.common import BaseCommand, CommandResult
from app.service import constants_chain

LOG = log.get_logger()


def _ledger(scenario):
    settings = scenario.constants
    return constants_chain.build_ledger(scenario.params, mu=settings.mu, c=settings.c, c_hat=settings.c_hat,
                                        lam=settings.lam)


class Constants(BaseCommand):
    """
    Handle for command: constants
    """
    name = config.COMMAND_CONSTANTS

    def on_run(self, scenario):
        ledger = _ledger(scenario)
        q = scenario.params.q
        admissible = constants_chain.c_hat_admissible(ledger.c_hat, ledger.lam, q, log_lam=ledger.log_lambda)
        rows = [
            self.row(scenario, "log_lambda", ledger.log_lambda),
            self.row(scenario, "lambda", ledger.lam),
            self.row(scenario, "c_hat", ledger.c_hat),
            self.row(scenario, "c_hat_admissible", admissible, passed=admissible),
            self.row(scenario, "log_mu_tilde", ledger.log_mu_tilde),
            self.row(scenario, "log_mu_hat", ledger.log_mu_hat),
            self.row(scenario, "alpha", ledger.alpha, passed=0.0 < ledger.alpha < 1.0),
            self.row(scenario, "c_tilde", ledger.c_tilde),
            self.row(scenario, "backward_room", constants_chain.backward_room(ledger.alpha)),
            self.row(scenario, "elliptic_room", constants_chain.elliptic_room(ledger.alpha)),
            self.row(scenario, "log_gamma_bar", ledger.log_gamma_bar),
            self.row(scenario, "gamma_bar", ledger.gamma_bar, passed=ledger.gamma_bar >= 1.0),
        ]
        return CommandResult(rows=rows, payload={"ledger": ledger.as_dict()})


class Chain(BaseCommand):
    """
    Handle for command: chain

    The chain runs from the probe centre towards x0 + r e_1.
    """
    name = config.COMMAND_CHAIN

    def endpoints(self, scenario):
        n = scenario.params.n
        x0 = np.zeros(n)
        center = np.asarray(scenario.probes.center, dtype=float)[:n]
        x0[:center.size] = center
        r = scenario.constants.r
        y_hat = x0.copy()
        y_hat[0] += r
        return x0, y_hat, r

    def on_run(self, scenario):
        settings = scenario.constants
        ledger = _ledger(scenario)
        x0, y_hat, r = self.endpoints(scenario)
        plan = constants_chain.build_chain(ledger, x0, y_hat, r, sigma=settings.sigma, c_prime=settings.c_prime)
        margin = constants_chain.induction_margin_check(plan, plan.c_prime, scenario.params.q)
        reached = float(np.linalg.norm(plan.y_hat - plan.points[-1])) < plan.rho
        rows = [
            self.row(scenario, "alpha", plan.alpha),
            self.row(scenario, "rho", plan.rho),
            self.row(scenario, "K", plan.K),
            self.row(scenario, "endpoint_covered", reached, passed=reached),
            self.row(scenario, "c_prime", plan.c_prime),
            self.row(scenario, "log_gamma_bar", plan.log_gamma_bar),
            self.row(scenario, "log_c", plan.log_c),
            self.row(scenario, "log_gamma", plan.log_gamma),
            self.row(scenario, "induction_margin", margin, passed=margin),
        ]
        return CommandResult(rows=rows, payload={"ledger": ledger.as_dict(), "plan": plan.as_dict()})
