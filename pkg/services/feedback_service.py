"""
Feedback Service Module

Matched-filter detection model for BT beacons and DT pilots.

The matched-filter output energy z of a pilot of length L received at SNR
snr_rx is exponential with mean 1 + L snr_rx (Rayleigh channel gain plus
unit-variance noise), so P(z > eta) = exp(-eta / (1 + L snr_rx)).

BT reports the scanned sector with the strongest beacon if it clears the
threshold, otherwise the empty report. DT ends with a pilot of length
kappa L whose detection is the ACK.
"""

import itertools
import math
from collections import Counter
from typing import Optional, Sequence

import numpy as np

from models.core.errors import ValidationError
from models.entities.actions import ActionClass, ActionSpec


class FeedbackService:
    """Static feedback-probability formulas."""

    @staticmethod
    def detection_prob(snr_rx, threshold: float, length: float):
        """P(z > eta) = exp(-eta / (1 + L snr_rx)); vectorized over snr_rx."""
        snr_rx = np.asarray(snr_rx, dtype=float)
        return np.exp(-threshold / (1.0 + length * snr_rx))[()]

    @staticmethod
    def bt_feedback_dist(means: Sequence[float], threshold: float) -> np.ndarray:
        """
        Law of the BT report for independent exponential beacon energies.

        Args:
            means: mean energy of each scanned beacon, in scan order
            threshold: eta_BT

        Returns:
            (n + 1,) array: P(report = scan position i) then P(empty report)

        Raises:
            ValidationError: empty scan
        """
        means = [float(m) for m in means]
        if not means:
            raise ValidationError("BT feedback needs a non-empty scan set")

        rates = [1.0 / m for m in means]
        probs = np.empty(len(means) + 1)

        for i, rate in enumerate(rates):
            # Others grouped by rate: inclusion-exclusion over how many of each
            # group exceed the winner
            others = Counter(r for j, r in enumerate(rates) if j != i)
            groups = list(others.items())
            total = 0.0
            for counts in itertools.product(*[range(n + 1) for _, n in groups]):
                weight = 1.0
                combined = rate
                for (r, n), k in zip(groups, counts):
                    weight *= math.comb(n, k) * (-1.0) ** k
                    combined += k * r
                total += weight * rate / combined * math.exp(-combined * threshold)
            probs[i] = total

        probs[-1] = float(np.prod(-np.expm1(-threshold * np.asarray(rates))))
        np.clip(probs, 0.0, 1.0, out=probs)
        return probs

    @staticmethod
    def bt_observation(
        action: ActionSpec,
        sector: Optional[int],
        serving_los: int,
        sidelobe_ratio: float,
        symbols_per_slot: int,
        threshold: float
    ) -> np.ndarray:
        """
        BT report law for an MU in a given sector (1-based).

        The beacon towards the MU's sector has mean 1 + L Gamma P when the
        serving BS has LOS; every other beacon uses the side-lobe SNR.
        """
        if action.kind != ActionClass.BT:
            raise ValidationError(f"{action.label} is not a BT action")
        aligned_snr = action.snr
        misaligned_snr = sidelobe_ratio * action.snr
        means = [
            1.0 + symbols_per_slot * (aligned_snr if (s == sector and serving_los) else misaligned_snr)
            for s in action.sectors
        ]
        return FeedbackService.bt_feedback_dist(means, threshold)

    @staticmethod
    def dt_ack_prob(
        action: ActionSpec,
        aligned: bool,
        los: bool,
        sidelobe_ratio: float,
        symbols_per_slot: int,
        pilot_fraction: float,
        threshold: float
    ) -> float:
        """P(ACK) of the closing DT pilot of length kappa L."""
        if action.kind != ActionClass.DT:
            raise ValidationError(f"{action.label} is not a DT action")
        snr_rx = action.snr if (aligned and los) else sidelobe_ratio * action.snr
        return float(FeedbackService.detection_prob(snr_rx, threshold, pilot_fraction * symbols_per_slot))
