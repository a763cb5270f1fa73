"""Bit-accurate simulator for hybrid temporal-computing arithmetic.

The heavy lifting lives in the compiled ``_htcsim`` extension; this package
re-exports its functions unchanged.
"""

from ._htcsim import (
    ConfigError,
    PgmError,
    cbsc_mac,
    cbsc_multiply,
    dct_roundtrip,
    decode,
    encode_rb,
    encode_tb,
    exhaustive_mul_error,
    fir_apply,
    gaussian6_tap_codes,
    gb_to_tb,
    htc_mac,
    htc_multiply,
    image_metrics,
    lfsr_next,
    mac_error_bench,
    mul_sweep,
    pgm_read,
    pgm_write,
    signed_to_offset,
    synth_image,
    unary_accuracy_bound,
    unary_mac,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "PgmError",
    "cbsc_mac",
    "cbsc_multiply",
    "dct_roundtrip",
    "decode",
    "encode_rb",
    "encode_tb",
    "exhaustive_mul_error",
    "fir_apply",
    "gaussian6_tap_codes",
    "gb_to_tb",
    "htc_mac",
    "htc_multiply",
    "image_metrics",
    "lfsr_next",
    "mac_error_bench",
    "mul_sweep",
    "pgm_read",
    "pgm_write",
    "signed_to_offset",
    "synth_image",
    "unary_accuracy_bound",
    "unary_mac",
]
