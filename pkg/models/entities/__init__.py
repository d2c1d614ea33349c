"""
Value types of the beam-management POMDP.
"""

from .geometry import SectorTable, LinkBudget
from .spaces import SystemState, StateSpace, ObservationSpace
from .actions import ActionClass, ActionSpec, ActionCatalog
from .mobility import Trajectory, MobilityChain
from .blockage import BlockageChain, BLOCKED, LOS
from .pomdp import KernelTensor, PomdpModel
from .alpha_vectors import AlphaVector
from .records import EpisodeStep, EpisodeRecord, TradeoffPoint

__all__ = [
    'SectorTable',
    'LinkBudget',
    'SystemState',
    'StateSpace',
    'ObservationSpace',
    'ActionClass',
    'ActionSpec',
    'ActionCatalog',
    'Trajectory',
    'MobilityChain',
    'BlockageChain',
    'BLOCKED',
    'LOS',
    'KernelTensor',
    'PomdpModel',
    'AlphaVector',
    'EpisodeStep',
    'EpisodeRecord',
    'TradeoffPoint',
]
