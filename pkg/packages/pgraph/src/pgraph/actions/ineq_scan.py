"""Inequality scan action - grid scans, constants and pointwise checks of the scalar inequalities."""

import math
from typing import Any, Mapping

from pgraph import inequalities
from pgraph.domain.model.config import RunConfig
from pgraph.domain.model.reports import InequalityPoint
from pgraph.exceptions import ConfigError

RATIO_KERNELS = ("ineq2", "gsr_like", "corollary")


def _ratio_kernel(config: RunConfig) -> Mapping[str, Any]:
    if config.point is not None:
        if config.kernel != "ineq2":
            raise ConfigError(f"--point is not available for the {config.kernel} kernel")
        a, t = config.point
        lhs, rhs = inequalities.ineq2_sides(InequalityPoint(a=a, t=t, p=config.p), precise=True)
        ratio = lhs / rhs if rhs > 0 else None
        return {"result": {"lhs": lhs, "rhs": rhs, "ratio": ratio}, "verified": ratio is None or ratio > 0}
    scan = inequalities.scan_equivalence(config.kernel, config.p)
    verified = scan.inf_ratio > 0 and math.isfinite(scan.sup_ratio)
    return {"result": scan.model_dump(mode="json"), "verified": verified}


def _ineq1(config: RunConfig) -> Mapping[str, Any]:
    if config.constant is None:
        raise ConfigError("the ineq1 kernel requires --constant")
    C = config.constant
    if config.point is not None:
        check = inequalities.ineq1_check(*config.point, C)
        direction = config.check
        verified = check.upper_holds if direction == "upper" else check.lower_holds if direction else None
        return {"result": check.model_dump(mode="json"), "verified": verified}
    direction = config.check or ("upper" if C >= 1 else "lower")
    grid = inequalities.ineq1_grid(C, direction)
    return {"result": grid.model_dump(mode="json") | {"constant": C, "direction": direction}, "verified": grid.holds}


def _pointwise_or_grid(config: RunConfig) -> Mapping[str, Any]:
    p, kernel = config.p, config.kernel
    extra: dict[str, Any] = {}
    if kernel == "ineq5":
        upper, lower = inequalities.ineq5_constants(p)
        extra = {"upper_constant": upper, "lower_constant": lower}
    elif kernel == "lindqvist":
        extra = {"constant": inequalities.lindqvist_constant(p)}

    if config.point is not None:
        x, y = config.point
        if kernel == "ineq34":
            holds = inequalities.ineq34_check(x, y, p)
        elif kernel == "ineq5":
            holds = inequalities.ineq5_check(x, y, p)
        elif kernel == "ptriangle":
            holds = inequalities.ptriangle_check(x, y, p)
        else:
            check = inequalities.lindqvist_check(x, y, p)
            return {"result": check.model_dump(mode="json") | extra, "verified": check.holds}
        return {"result": {"holds": holds, "point": [x, y]} | extra, "verified": holds}

    if kernel == "ptriangle":
        raise ConfigError("the ptriangle kernel requires --point")
    if kernel == "ineq34":
        grid = inequalities.ineq34_grid(p)
    elif kernel == "ineq5":
        grid = inequalities.ineq5_grid(p)
    else:
        grid = inequalities.lindqvist_grid(p)
    return {"result": grid.model_dump(mode="json") | extra, "verified": grid.holds}


def _constants(config: RunConfig) -> Mapping[str, Any]:
    p = config.p
    if p <= 1:
        raise ConfigError("the cp kernel requires p > 1")
    result: dict[str, Any] = {"p": p, "constant_cp": None, "calibrated_upper_constant": None}
    verified = True
    if p >= 2:
        cp = inequalities.constant_cp(p)
        result["constant_cp"] = cp
        verified = 0 < cp <= 0.5
    if 1 < p <= 2:
        result["calibrated_upper_constant"] = inequalities.calibrated_upper_constant(p)
    return {"result": result, "verified": verified}


def handle(config: RunConfig) -> Mapping[str, Any]:
    if config.kernel in RATIO_KERNELS:
        return _ratio_kernel(config)
    if config.kernel == "ineq1":
        return _ineq1(config)
    if config.kernel == "cp":
        return _constants(config)
    return _pointwise_or_grid(config)
