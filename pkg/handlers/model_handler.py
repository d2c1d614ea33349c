"""
Model Handler Module

Facade that owns one assembled scenario: the sector table, link budget,
mobility and blockage chains, the action catalog, the full POMDP and the
small FSM models. Everything is built lazily on first access and cached,
so a command only pays for what it uses.

Classes:
    ModelHandler: Lazy, cached access to every model component of a scenario
"""

from typing import Dict, Optional, Tuple

import numpy as np

from clients.artifact_client import ArtifactClient
from clients.id_processors import config_hash
from models.collections.alpha_vector_set import AlphaVectorSet
from models.collections.belief_set import BeliefSet
from models.core.errors import PolicyMismatchError
from models.core.random_streams import STREAM_BELIEFS, STREAM_SOLVER, rng_for
from models.core.scenario_config import ScenarioConfig
from models.core.units import dbm_to_watt
from models.entities.actions import ActionCatalog
from models.entities.blockage import BlockageChain
from models.entities.geometry import LinkBudget, SectorTable
from models.entities.mobility import MobilityChain
from models.entities.pomdp import PomdpModel
from services.blockage_service import BlockageService
from services.channel_service import ChannelService
from services.kernel_service import KernelService
from services.mobility_service import MobilityService
from services.perseus_service import PerseusService, SolveResult
from services.policy_service import FsmPolicy, FsmVariant, GeniePolicy, PerseusPolicy, PolicyService
from services.simulation_service import EpisodeEnvironment


class ModelHandler:
    """
    Central access point to one scenario's models.

    Attributes:
        cfg: validated ScenarioConfig
        client: ArtifactClient for mobility files and policies
        mobility_file: CSV with a previously estimated chain ('' = estimate)
        quiet: disables progress bars

    Usage:
        handler = ModelHandler(cfg, ArtifactClient('output'))
        model = handler.model                       # full catalog POMDP
        result = handler.solve(lambda_=10.0)
        policy = handler.fsm_policy('fsm-heu', power_dbm=30.0)
    """

    def __init__(
        self,
        cfg: ScenarioConfig,
        client: Optional[ArtifactClient] = None,
        mobility_file: str = '',
        quiet: bool = False
    ):
        self.cfg = cfg
        self.client = client
        self.mobility_file = mobility_file
        self.quiet = quiet
        self._table: Optional[SectorTable] = None
        self._budget: Optional[LinkBudget] = None
        self._chain: Optional[MobilityChain] = None
        self._catalog: Optional[ActionCatalog] = None
        self._model: Optional[PomdpModel] = None
        self._fsm_models: Dict[Tuple[float, int], PomdpModel] = {}
        self._beliefs: Optional[BeliefSet] = None
        self._config_hash: Optional[str] = None

    @property
    def progress(self) -> bool:
        return not self.quiet

    @property
    def config_hash(self) -> str:
        """Fingerprint of the scenario together with the sector chain in use."""
        if self._config_hash is None:
            self._config_hash = config_hash(self.cfg, self.chain.matrix)
        return self._config_hash

    # ────────────────────────────────────────────────────────────
    # Physical layer
    # ────────────────────────────────────────────────────────────

    @property
    def table(self) -> SectorTable:
        if self._table is None:
            self._table = ChannelService.build_sector_table(self.cfg)
        return self._table

    @property
    def budget(self) -> LinkBudget:
        if self._budget is None:
            self._budget = ChannelService.build_link_budget(self.cfg, self.table)
        return self._budget

    @property
    def blockage(self) -> Tuple[BlockageChain, BlockageChain]:
        return BlockageChain(*self.cfg.blockage_bs1), BlockageChain(*self.cfg.blockage_bs2)

    @property
    def chain(self) -> MobilityChain:
        """Sector chain loaded from mobility_file or estimated from fresh trajectories."""
        if self._chain is None:
            if self.mobility_file:
                header, rows = self.client.load_csv(self.mobility_file)
                self._chain = MobilityService.chain_from_rows(header, rows, self.cfg.slot_duration)
            else:
                self._chain = self.estimate_chain()
        return self._chain

    def estimate_chain(self) -> MobilityChain:
        """Fresh estimate; becomes the handler's chain when no mobility_file is set."""
        trajectories = MobilityService.simulate_trajectories(
            self.cfg, self.cfg.mobility_trajectories, self.cfg.mobility_seed, progress=self.progress
        )
        chain = MobilityService.estimate_chain(trajectories, self.table, self.cfg.slot_duration)
        if not self.mobility_file and self._chain is None:
            self._chain = chain
        return chain

    @property
    def environment(self) -> EpisodeEnvironment:
        return EpisodeEnvironment(
            cfg=self.cfg, table=self.table, budget=self.budget,
            chain=self.chain, blockage=self.blockage
        )

    # ────────────────────────────────────────────────────────────
    # POMDP models
    # ────────────────────────────────────────────────────────────

    @property
    def catalog(self) -> ActionCatalog:
        if self._catalog is None:
            cfg = self.cfg
            self._catalog = ActionCatalog.build(
                cfg.num_sectors, cfg.power_levels, cfg.dt_durations, self.budget.gain,
                handover_slots=cfg.handover_slots, bt_window=cfg.bt_window
            )
        return self._catalog

    @property
    def model(self) -> PomdpModel:
        if self._model is None:
            self._model = KernelService.build_model(
                self.cfg, self.catalog.actions, self.chain, self.blockage, self.config_hash
            )
        return self._model

    def fsm_model(self, power_dbm: float, dt_duration: Optional[int] = None) -> PomdpModel:
        """Model over [HO, exhaustive BT, DT(1..S)] at one power."""
        duration = self.cfg.fsm_dt_duration if dt_duration is None else dt_duration
        key = (float(power_dbm), int(duration))
        if key not in self._fsm_models:
            actions = PolicyService.fsm_actions(
                self.cfg.num_sectors, power_dbm, duration, self.budget.gain, self.cfg.handover_slots
            )
            self._fsm_models[key] = KernelService.build_model(
                self.cfg, actions, self.chain, self.blockage, self.config_hash
            )
        return self._fsm_models[key]

    @property
    def max_slot_reward(self) -> float:
        """Delta_t T* at the largest power level: bits of one aligned LOS slot."""
        best = max(self.cfg.power_levels)
        snr = self.budget.gain * float(dbm_to_watt(best))
        return self.cfg.slot_duration * ChannelService.optimal_throughput(
            snr, self.cfg.pilot_fraction, self.cfg.bandwidth
        )[0]

    @property
    def solver_tol(self) -> float:
        return self.cfg.solver_tol_scale * self.max_slot_reward

    # ────────────────────────────────────────────────────────────
    # Solving
    # ────────────────────────────────────────────────────────────

    def initial_beliefs(self) -> BeliefSet:
        beliefs = BeliefSet([self.model.initial_belief])
        beliefs.metadata = {'config_hash': self.config_hash, 'seed': self.cfg.seed}
        return beliefs

    def belief_set(self, beliefs_file: str = '') -> BeliefSet:
        """Belief points from beliefs_file, or grown from the initial belief (cached)."""
        if beliefs_file:
            if not self.client.exists(beliefs_file):
                raise FileNotFoundError(f"Belief file not found: {self.client.path(beliefs_file)}")
            beliefs = BeliefSet(client=self.client, source_name=beliefs_file)
            stored = beliefs.metadata.get('config_hash')
            if stored != self.config_hash:
                raise PolicyMismatchError(
                    f"Beliefs were expanded for config {stored}, current config is {self.config_hash}"
                )
            return beliefs
        if self._beliefs is None:
            self._beliefs = PerseusService.expand_beliefs(
                self.initial_beliefs(), self.model, self.cfg.belief_set_size,
                rng_for(self.cfg.seed, STREAM_BELIEFS), progress=self.progress
            )
        return self._beliefs

    def solve(self, lambda_: Optional[float] = None, beliefs: Optional[BeliefSet] = None, index: int = 0) -> SolveResult:
        """
        PERSEUS on the full model for one trade-off weight.

        Args:
            lambda_: in cfg.lambda_scale units; defaults to cfg.lambda_
            beliefs: belief points; defaults to belief_set()
            index: solver stream index, so sweeps use independent streams
        """
        lam = self.cfg.lambda_ if lambda_ is None else lambda_
        return PerseusService.solve(
            self.model,
            self.belief_set() if beliefs is None else beliefs,
            weight=lam * self.cfg.lambda_scale,
            tol=self.solver_tol,
            max_iters=self.cfg.max_iters,
            rng=rng_for(self.cfg.seed, STREAM_SOLVER, index),
            progress=self.progress
        )

    # ────────────────────────────────────────────────────────────
    # Policies
    # ────────────────────────────────────────────────────────────

    def perseus_policy(self, alpha_set: AlphaVectorSet) -> PerseusPolicy:
        return PerseusPolicy(self.model, alpha_set)

    def load_perseus_policy(self, policy_file: str) -> PerseusPolicy:
        return self.perseus_policy(PerseusService.load_policy(self.client, policy_file, self.model))

    def fsm_policy(self, variant: str, power_dbm: float) -> FsmPolicy:
        return FsmPolicy(self.fsm_model(power_dbm), FsmVariant(variant))

    def genie_policy(self, power_dbm: float) -> GeniePolicy:
        return GeniePolicy(power_dbm)

    def steady_states(self) -> np.ndarray:
        return np.array([BlockageService.steady_state(chain) for chain in self.blockage])
