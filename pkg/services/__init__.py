"""
Services Module

Algorithms of the vehicular beam-management POMDP. Each service is a class
with static methods; the ModelHandler wires them together.
"""

from .channel_service import ChannelService
from .mobility_service import MobilityService
from .blockage_service import BlockageService
from .feedback_service import FeedbackService
from .kernel_service import KernelService
from .belief_service import BeliefService
from .perseus_service import PerseusService, SolveResult, BackupOperator
from .policy_service import PolicyService, Policy, PerseusPolicy, FsmPolicy, GeniePolicy, FsmVariant
from .simulation_service import SimulationService, EpisodeEnvironment, GroundTruth
from .metrics_service import MetricsService
from .experiment_service import ExperimentService, SweepReport
from .chart_generator import ChartGenerator

__all__ = [
    'ChannelService',
    'MobilityService',
    'BlockageService',
    'FeedbackService',
    'KernelService',
    'BeliefService',
    'PerseusService',
    'SolveResult',
    'BackupOperator',
    'PolicyService',
    'Policy',
    'PerseusPolicy',
    'FsmPolicy',
    'GeniePolicy',
    'FsmVariant',
    'SimulationService',
    'EpisodeEnvironment',
    'GroundTruth',
    'MetricsService',
    'ExperimentService',
    'SweepReport',
    'ChartGenerator',
]
