from .base import Problem
from .sat import CnfFormula, MaxSat
from .scp import ScpInstance, SetCover
from .synthetic import CuboidFunction, CuboidFunctionSpec, Deceptive2d, Deceptive2dSpec
from .tsp import TravelingSalesman, TspInstance

__all__ = [
    "CnfFormula",
    "CuboidFunction",
    "CuboidFunctionSpec",
    "Deceptive2d",
    "Deceptive2dSpec",
    "MaxSat",
    "Problem",
    "ScpInstance",
    "SetCover",
    "TravelingSalesman",
    "TspInstance",
]
