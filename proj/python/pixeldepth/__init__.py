"""Image complexity toolkit: compressed length as an algorithmic-complexity
estimate, decompression time as a logical-depth estimate, plus the ranking
and grouping analyses built on them."""

from ._core import (
    CompressedBlob,
    ConsistencyError,
    DecodeError,
    DimensionError,
    FormatError,
    Image,
    ParameterError,
    UnsupportedDepthError,
    add_noise,
    compress,
    codec_version,
    decompress,
    gen_random,
    gen_rule30,
    gen_uniform,
    generate_series,
    harmonic_order,
    ingest,
    invert,
    k_estimate,
    partition_significant,
    rank_values,
    read_pnm,
    reproduce,
    rng_version,
    run_session,
    series_image_ids,
    spearman,
    superpose_rotated,
    tile,
    write_pnm,
    __version__,
)

__all__ = [
    "CompressedBlob",
    "ConsistencyError",
    "DecodeError",
    "DimensionError",
    "FormatError",
    "Image",
    "ParameterError",
    "UnsupportedDepthError",
    "add_noise",
    "compress",
    "codec_version",
    "decompress",
    "gen_random",
    "gen_rule30",
    "gen_uniform",
    "generate_series",
    "harmonic_order",
    "ingest",
    "invert",
    "k_estimate",
    "partition_significant",
    "rank_values",
    "read_pnm",
    "reproduce",
    "rng_version",
    "run_session",
    "series_image_ids",
    "spearman",
    "superpose_rotated",
    "tile",
    "write_pnm",
    "__version__",
]
