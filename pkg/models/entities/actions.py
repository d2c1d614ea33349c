"""
Actions: the (class, sector set, target SNR, duration) tuples and the catalog.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from models.core.errors import ValidationError
from models.core.units import dbm_to_watt


class ActionClass(str, Enum):
    HO = 'HO'
    BT = 'BT'
    DT = 'DT'


@dataclass(frozen=True)
class ActionSpec:
    """
    One action.

    Attributes:
        kind: HO, BT or DT
        sectors: BT scan order, the DT target as a 1-tuple, empty for HO
        duration: T in slots (BT: |sectors| + 1, DT: >= 2, HO: T_HO)
        power_dbm: transmit power; None for HO
        snr: target SNR Gamma * P (linear), 0 for HO
    """

    kind: ActionClass
    sectors: Tuple[int, ...]
    duration: int
    power_dbm: Optional[float] = None
    snr: float = 0.0

    def __post_init__(self):
        if self.kind == ActionClass.HO:
            if self.sectors or self.snr != 0.0:
                raise ValidationError("HO carries no sectors and no SNR")
        elif self.kind == ActionClass.BT:
            if not self.sectors:
                raise ValidationError("BT needs a non-empty scan set")
            if self.duration != len(self.sectors) + 1:
                raise ValidationError("BT duration must be |scan set| + 1")
        elif self.kind == ActionClass.DT:
            if len(self.sectors) != 1:
                raise ValidationError("DT targets exactly one sector")
            if self.duration < 2:
                raise ValidationError("DT needs >= 2 slots")
        if self.duration < 1:
            raise ValidationError("duration must be >= 1 slot")

    @property
    def power_w(self) -> float:
        return 0.0 if self.power_dbm is None else float(dbm_to_watt(self.power_dbm))

    @property
    def target(self) -> int:
        """DT target sector (1-based)."""
        return self.sectors[0]

    @property
    def label(self) -> str:
        if self.kind == ActionClass.HO:
            return 'HO'
        if self.kind == ActionClass.DT:
            return f"DT[s={self.target},T={self.duration},P={self.power_dbm:g}dBm]"
        scan = ','.join(str(s) for s in self.sectors)
        return f"BT[s={scan},P={self.power_dbm:g}dBm]"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind.value,
            'sectors': list(self.sectors),
            'duration': self.duration,
            'power_dbm': self.power_dbm,
            'snr': self.snr,
            'label': self.label,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ActionSpec':
        return cls(
            kind=ActionClass(data['kind']),
            sectors=tuple(int(s) for s in data.get('sectors', [])),
            duration=int(data['duration']),
            power_dbm=None if data.get('power_dbm') is None else float(data['power_dbm']),
            snr=float(data.get('snr', 0.0))
        )

    @classmethod
    def handover(cls, slots: int) -> 'ActionSpec':
        return cls(ActionClass.HO, (), slots)

    @classmethod
    def beam_training(cls, sectors: Sequence[int], power_dbm: float, gain: float) -> 'ActionSpec':
        sectors = tuple(sectors)
        return cls(ActionClass.BT, sectors, len(sectors) + 1, float(power_dbm),
                   gain * float(dbm_to_watt(power_dbm)))

    @classmethod
    def data_transmission(cls, sector: int, duration: int, power_dbm: float, gain: float) -> 'ActionSpec':
        return cls(ActionClass.DT, (sector,), duration, float(power_dbm),
                   gain * float(dbm_to_watt(power_dbm)))


@dataclass
class ActionCatalog:
    """
    Ordered, finite action list.

    Index order is the tie-breaking order everywhere: HO first, then BT
    actions, then DT actions.
    """

    actions: List[ActionSpec] = field(default_factory=list)

    def __post_init__(self):
        self._index = {action: i for i, action in enumerate(self.actions)}
        if len(self._index) != len(self.actions):
            raise ValidationError("Action catalog contains duplicates")

    # ──────────────────────────────────────────────────────
    # Construction
    # ──────────────────────────────────────────────────────

    @classmethod
    def build(
        cls,
        num_sectors: int,
        power_levels: Sequence[float],
        dt_durations: Sequence[int],
        gain: float,
        handover_slots: int = 1,
        bt_window: int = 3
    ) -> 'ActionCatalog':
        """
        HO; exhaustive BT at each power; BT windows of width bt_window centred
        on each sector (clipped at the road ends, duplicates dropped) at each
        power; DT on each sector x duration x power.
        """
        actions = [ActionSpec.handover(handover_slots)]
        exhaustive = tuple(range(1, num_sectors + 1))

        windows = []
        if bt_window < num_sectors:
            half = (bt_window - 1) // 2
            for s in exhaustive:
                start = min(max(1, s - half), num_sectors - bt_window + 1)
                window = tuple(range(start, start + bt_window))
                if window not in windows:
                    windows.append(window)

        for scan in [exhaustive] + windows:
            for p in power_levels:
                actions.append(ActionSpec.beam_training(scan, p, gain))

        for s in exhaustive:
            for t in dt_durations:
                for p in power_levels:
                    actions.append(ActionSpec.data_transmission(s, t, p, gain))

        return cls(actions)

    # ──────────────────────────────────────────────────────
    # Lookup
    # ──────────────────────────────────────────────────────

    def index(self, action: ActionSpec) -> int:
        try:
            return self._index[action]
        except KeyError:
            raise ValidationError(f"Action {action.label} is not in the catalog")

    def __contains__(self, action: ActionSpec) -> bool:
        return action in self._index

    def __getitem__(self, i: int) -> ActionSpec:
        return self.actions[i]

    def __len__(self) -> int:
        return len(self.actions)

    def __iter__(self) -> Iterator[ActionSpec]:
        return iter(self.actions)

    def labels(self) -> List[str]:
        return [a.label for a in self.actions]

    def find(self, **criteria) -> List[ActionSpec]:
        """Actions whose attributes equal every criterion, e.g. find(kind=ActionClass.HO)."""
        return [
            a for a in self.actions
            if all(getattr(a, key) == value for key, value in criteria.items())
        ]
