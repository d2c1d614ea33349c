"""
Help strings for the scenario flags (--<field>), keyed by config file key.

Entries marked [physical] describe the radio and road scenario; the rest
are modelling and run-control choices.
"""

CONFIG_HELP = {
    'num_antennas': 'Antennas per BS array [physical]',
    'coverage_angle': 'BS coverage angle in degrees [physical]',
    'slot_duration': 'Slot length in seconds [physical]',
    'road_distance': 'Perpendicular BS-road distance in meters [physical]',
    'bandwidth': 'System bandwidth in Hz [physical]',
    'carrier_freq': 'Carrier frequency in Hz [physical]',
    'noise_psd': 'Noise power spectral density in dBm/Hz [physical]',
    'pilot_fraction': 'Fraction kappa of each slot spent on pilots [physical]',
    'handover_slots': 'Slots taken by a handover [physical]',
    'blockage_p10': 'P(LOS -> blocked) per slot [physical]',
    'blockage_p01': 'P(blocked -> LOS) per slot [physical]',
    'blockage_p10_bs2': 'BS 2 override of blockage_p10 (empty: same as BS 1)',
    'blockage_p01_bs2': 'BS 2 override of blockage_p01 (empty: same as BS 1)',
    'speed_mean': 'Mean vehicle speed in m/s [physical]',
    'speed_std': 'Speed standard deviation in m/s [physical]',
    'memory': 'Gauss-Markov memory per slot [physical]',
    'mobility_trajectories': 'Trajectories used to estimate the sector chain',
    'mobility_seed': 'Seed of the trajectories behind the sector chain',
    'mobility_source': 'Episode sector paths: chain (estimated) or trajectory (raw Gauss-Markov)',
    'num_sectors': 'Sectors per BS coverage area',
    'sidelobe_ratio': 'Side-lobe to main-lobe SNR ratio rho',
    'symbols_per_slot': 'Symbols per slot L',
    'bt_threshold': 'Beacon detection threshold eta (matched-filter energy)',
    'dt_threshold': 'Pilot detection threshold for DT acknowledgements',
    'bt_window': 'Width of the windowed BT scans',
    'dt_durations': 'Comma-separated DT durations in slots',
    'power_levels': 'Comma-separated transmit powers in dBm',
    'fsm_dt_duration': 'DT duration used by the FSM policies',
    'lambda': 'Trade-off weight in lambda_scale units',
    'lambda_grid': 'Comma-separated lambdas swept for PERSEUS',
    'lambda_scale': 'Bits per Joule of one lambda unit',
    'belief_set_size': 'Target number of belief points',
    'solver_tol_scale': 'Convergence tolerance as a fraction of one full-power slot of bits',
    'max_iters': 'Maximum PERSEUS sweeps',
    'episodes': 'Monte-Carlo episodes per point',
    'max_episode_slots': 'Slot cap per episode',
    'seed': 'Master seed for solver, belief expansion and episodes',
}
