"""
Unit conversions for powers, noise densities and SNRs.
"""

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s


def dbm_to_watt(p_dbm):
    """Converts dBm to watts: 10^((p - 30) / 10)."""
    return np.power(10.0, (np.asarray(p_dbm, dtype=float) - 30.0) / 10.0)[()]


def watt_to_dbm(p_watt):
    """Converts watts to dBm; 0 W maps to -inf."""
    p = np.asarray(p_watt, dtype=float)
    with np.errstate(divide='ignore'):
        return (10.0 * np.log10(p) + 30.0)[()]
