# -*- coding: utf-8 -*-

import json

try:
    from collections import OrderedDict
except ImportError:
    OrderedDict = dict


EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_UNEXPECTED = 70

ERR_UNKNOWN = {"exit_code": EXIT_UNEXPECTED, "code": 500, "title": "Unknown Error"}

ERR_INVALID_PARAMETER = {
    "exit_code": 2,
    "code": 88,
    "title": "Invalid Parameter",
}

ERR_SCENARIO = {
    "exit_code": 2,
    "code": 87,
    "title": "Invalid Scenario",
}

ERR_DOMAIN = {
    "exit_code": 3,
    "code": 30,
    "title": "Outside Domain",
}

ERR_OUT_OF_RANGE = {
    "exit_code": 3,
    "code": 31,
    "title": "Exponent Out Of Range",
}

ERR_SINGULAR_POINT = {
    "exit_code": 3,
    "code": 32,
    "title": "Singular Point",
}

ERR_STABILITY = {
    "exit_code": 4,
    "code": 40,
    "title": "Time Step Exceeds Stability Bound",
}

ERR_DIVERGENCE = {
    "exit_code": 4,
    "code": 41,
    "title": "Non-finite Update",
}

ERR_SCHEDULING = {
    "exit_code": 5,
    "code": 50,
    "title": "Snapshot Not Scheduled",
}

ERR_EMPTY_BALL = {
    "exit_code": 5,
    "code": 51,
    "title": "No Grid Node Inside Ball",
}

ERR_SETUP = {
    "exit_code": 6,
    "code": 60,
    "title": "Audit Setup Violated",
}

ERR_AUDIT_REFUSED = {
    "exit_code": 6,
    "code": 61,
    "title": "Audit Refused",
}


class AppError(Exception):
    def __init__(self, error=ERR_UNKNOWN, description=None):
        self.error = dict(error)
        self.error["description"] = description
        super().__init__(description or self.error["title"])

    @property
    def code(self):
        return self.error["code"]

    @property
    def title(self):
        return self.error["title"]

    @property
    def exit_code(self):
        return self.error["exit_code"]

    @property
    def description(self):
        return self.error["description"]

    def as_dict(self):
        meta = OrderedDict()
        meta["code"] = self.code
        meta["message"] = self.title
        if self.description:
            meta["description"] = self.description
        return {"meta": meta}

    @staticmethod
    def handle(exception, stream):
        stream.write(json.dumps(exception.as_dict()) + "\n")
        return exception.exit_code


class InvalidParameterError(AppError):
    def __init__(self, description=None):
        super().__init__(ERR_INVALID_PARAMETER, description)


class ScenarioError(AppError):
    def __init__(self, description=None, line=None):
        if line is not None:
            description = "line %s: %s" % (line, description)
        super().__init__(ERR_SCENARIO, description)
        self.line = line


class DomainError(AppError):
    def __init__(self, description=None):
        super().__init__(ERR_DOMAIN, description)


class OutOfRangeError(AppError):
    def __init__(self, description=None):
        super().__init__(ERR_OUT_OF_RANGE, description)


class SingularPointError(AppError):
    def __init__(self, description=None):
        super().__init__(ERR_SINGULAR_POINT, description)


class StabilityError(AppError):
    def __init__(self, dt=None, limit=None):
        description = None
        if dt is not None and limit is not None:
            description = "dt: %r, stable limit: %r" % (dt, limit)
        super().__init__(ERR_STABILITY, description)


class DivergenceError(AppError):
    def __init__(self, node=None, time=None):
        description = None
        if node is not None:
            description = "node: %s, time: %r" % (node, time)
        super().__init__(ERR_DIVERGENCE, description)
        self.node = node


class SchedulingError(AppError):
    def __init__(self, description=None):
        super().__init__(ERR_SCHEDULING, description)


class EmptyBallError(AppError):
    def __init__(self, description=None):
        super().__init__(ERR_EMPTY_BALL, description)


class SetupError(AppError):
    def __init__(self, description=None):
        super().__init__(ERR_SETUP, description)


class AuditRefusedError(AppError):
    def __init__(self, description=None):
        super().__init__(ERR_AUDIT_REFUSED, description)
