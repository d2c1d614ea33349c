"""
Visualization module using matplotlib for trade-off curves and episode traces.

Generates charts from sweep results and traced episodes.
"""

import math
import os
from typing import Dict, List, Optional, Sequence

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

from models.entities.geometry import SectorTable
from models.entities.records import EpisodeRecord, TradeoffPoint
from services.channel_service import ChannelService


class ChartGenerator:
    """
    Generates charts using matplotlib.

    All methods are static and save charts to files.
    """

    # Default chart style
    STYLE = 'seaborn-v0_8-darkgrid'
    FIGSIZE = (12, 6)
    DPI = 100

    COLORS = {
        'genie': '#2E86AB',
        'perseus': '#A23B72',
        'fsm-heu': '#F18F01',
        'baseline': '#C73E1D',
    }
    MARKERS = {'genie': None, 'perseus': 'o', 'fsm-heu': 's', 'baseline': '^'}
    ACTION_LEVELS = {'HO': 0, 'BT': 1, 'DT': 2}

    @staticmethod
    def _setup_style():
        """Apply default style to charts."""
        try:
            plt.style.use(ChartGenerator.STYLE)
        except OSError:
            plt.style.use('default')

    @staticmethod
    def _ensure_output_dir(output_dir: str = 'charts'):
        if output_dir:
            os.makedirs(output_dir, exist_ok=True)

    @staticmethod
    def _empty_chart(output_file: str, message: str) -> str:
        fig, ax = plt.subplots(figsize=ChartGenerator.FIGSIZE, dpi=ChartGenerator.DPI)
        ax.text(0.5, 0.5, message, ha='center', va='center', fontsize=16)
        ax.axis('off')
        plt.savefig(output_file, bbox_inches='tight')
        plt.close(fig)
        return output_file

    # ──────────────────────────────────────────────────────
    # TRADE-OFF CURVES
    # ──────────────────────────────────────────────────────

    @staticmethod
    def tradeoff_curves(
        points: Sequence[TradeoffPoint],
        output_file: str = 'charts/tradeoff.png',
        title: str = 'Spectral efficiency vs. average power'
    ) -> str:
        """
        One line per policy, points ordered by average power, with CI bars.

        Returns:
            Path to saved chart
        """
        ChartGenerator._setup_style()
        ChartGenerator._ensure_output_dir(os.path.dirname(output_file))

        if not points:
            return ChartGenerator._empty_chart(output_file, 'No points to plot')

        curves: Dict[str, List[TradeoffPoint]] = {}
        for point in points:
            curves.setdefault(point.policy, []).append(point)

        fig, ax = plt.subplots(figsize=ChartGenerator.FIGSIZE, dpi=ChartGenerator.DPI)
        for policy, curve in curves.items():
            curve = sorted(curve, key=lambda p: p.avg_power_w)
            ax.errorbar(
                [p.avg_power_w for p in curve],
                [p.spectral_eff_bps_hz for p in curve],
                xerr=[p.ci_power for p in curve],
                yerr=[p.ci_se for p in curve],
                label=policy,
                color=ChartGenerator.COLORS.get(policy),
                marker=ChartGenerator.MARKERS.get(policy, 'o'),
                linestyle='--' if policy == 'genie' else '-',
                linewidth=2, markersize=7, capsize=3
            )

        ax.set_xscale('log')
        ax.set_xlabel('Average power [W]', fontsize=12, fontweight='bold')
        ax.set_ylabel('Spectral efficiency [bps/Hz]', fontsize=12, fontweight='bold')
        ax.set_title(title, fontsize=16, fontweight='bold', pad=20)
        ax.grid(True, alpha=0.3)
        ax.legend()

        plt.tight_layout()
        plt.savefig(output_file, bbox_inches='tight')
        plt.close(fig)

        return output_file

    # ──────────────────────────────────────────────────────
    # EPISODE TRACE
    # ──────────────────────────────────────────────────────

    @staticmethod
    def sector_angle_labels(table: SectorTable) -> List[str]:
        """Centre angle of sectors 1..S in whole degrees."""
        return [
            f"{round(math.degrees(ChannelService.sector_center_angle(s, table))):d}°"
            for s in range(1, table.num_sectors + 1)
        ]

    @staticmethod
    def episode_trace(
        record: EpisodeRecord,
        output_file: str = 'charts/episode.png',
        max_slots: int = 5000,
        table: Optional[SectorTable] = None
    ) -> str:
        """
        Sector, serving BS, serving-BS LOS and action class against slot index
        for the first max_slots slots of a traced episode. With a sector table
        the sector panel also carries the centre angle of every sector.
        """
        ChartGenerator._setup_style()
        ChartGenerator._ensure_output_dir(os.path.dirname(output_file))

        if not record.steps:
            return ChartGenerator._empty_chart(output_file, 'Episode has no traced steps')

        slots, sectors, serving, los, kinds = [], [], [], [], []
        feedback = []
        for step in record.steps:
            if step.slot >= max_slots:
                break
            span = range(step.slot, step.slot + len(step.sectors))
            slots.extend(span)
            sectors.extend(step.sectors)
            serving.extend([step.serving] * len(step.sectors))
            los.extend(step.serving_los)
            kinds.extend([ChartGenerator.ACTION_LEVELS[step.action[:2]]] * len(step.sectors))
            feedback.append((step.slot + len(step.sectors), step.observation))

        fig, axes = plt.subplots(4, 1, sharex=True, figsize=(12, 9), dpi=ChartGenerator.DPI)
        axes[0].step(slots, sectors, where='post', color='#2E86AB')
        axes[0].set_ylabel('Sector')
        if table is not None:
            angles = axes[0].twinx()
            angles.set_ylim(axes[0].get_ylim())
            angles.set_yticks(range(1, table.num_sectors + 1))
            angles.set_yticklabels(ChartGenerator.sector_angle_labels(table), fontsize=8)
            angles.set_ylabel('Centre angle')
            angles.grid(False)
        for slot, label in feedback:
            if label not in ('y=∅', 'y=exit'):
                axes[0].plot(slot, int(label[2:]), 'x', color='#C73E1D', markersize=5)
        axes[1].step(slots, serving, where='post', color='#A23B72')
        axes[1].set_ylabel('Serving BS')
        axes[1].set_yticks([1, 2])
        axes[2].step(slots, los, where='post', color='#3B1F2B')
        axes[2].set_ylabel('LOS')
        axes[2].set_yticks([0, 1])
        axes[3].step(slots, kinds, where='post', color='#F18F01')
        axes[3].set_yticks(list(ChartGenerator.ACTION_LEVELS.values()))
        axes[3].set_yticklabels(list(ChartGenerator.ACTION_LEVELS.keys()))
        axes[3].set_xlabel('Slot', fontsize=12, fontweight='bold')
        axes[0].set_title(f"Episode {record.episode} [{record.policy}]", fontsize=16, fontweight='bold')

        plt.tight_layout()
        plt.savefig(output_file, bbox_inches='tight')
        plt.close(fig)

        return output_file
