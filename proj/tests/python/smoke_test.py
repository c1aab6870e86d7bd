"""Smoke tests for the python module: generation, codec round trips, the
K ordering, a short timing session, and the analysis helpers."""

import sys

import pixeldepth as pd


def test_generators():
    img = pd.gen_uniform(8, 4, 0)
    assert img.width == 8 and img.height == 4
    assert img.ink() == 0

    r = pd.gen_random(64, 64, 42, 0.3)
    assert r == pd.gen_random(64, 64, 42, 0.3)
    assert 0 < r.ink() < 64 * 64

    ca = pd.gen_rule30(5, 2)
    assert [ca.at(x, 1) for x in range(5)] == [0, 1, 1, 1, 0]

    assert pd.invert(pd.invert(r)) == r
    assert pd.tile(ca, 1) == ca

    series = pd.generate_series("line_series", width=50, height=50, seed=3, count=4)
    assert len(series) == 4
    assert series[0].ink() == 0
    ids = pd.series_image_ids("line_series", width=50, height=50, seed=3, count=4)
    assert ids[0] == "line_series-0"


def test_codec_roundtrip():
    img = pd.gen_random(100, 70, 9, 0.4)
    for codec in ("toy_rle", "filtered_deflate"):
        blob = pd.compress(img, codec=codec, optimize=False)
        assert pd.decompress(blob) == img
        raw = blob.to_bytes()
        again = pd.CompressedBlob.from_bytes(raw)
        assert pd.decompress(again) == img

    k_uniform = pd.k_estimate(pd.gen_uniform(200, 200, 0))
    k_random = pd.k_estimate(pd.gen_random(200, 200, 5, 0.5))
    assert k_uniform < k_random

    # optimizer inversion invariance
    ca = pd.gen_rule30(201, 200)
    assert pd.k_estimate(ca) == pd.k_estimate(pd.invert(ca))


def test_errors():
    try:
        pd.gen_random(10, 10, 1, 1.5)
    except pd.ParameterError:
        pass
    else:
        raise AssertionError("expected ParameterError")

    blob = pd.compress(pd.gen_random(32, 32, 7, 0.5), optimize=False)
    raw = bytearray(blob.to_bytes())
    try:
        pd.CompressedBlob.from_bytes(bytes(raw[: len(raw) // 2]))
    except pd.DecodeError:
        pass
    else:
        raise AssertionError("expected DecodeError")


def test_session_and_analysis():
    images = [pd.gen_uniform(64, 64, 0), pd.gen_random(64, 64, 3, 0.5)]
    stats = pd.run_session(images, ["uniform", "random"], n_runs=5, warmup_runs=1,
                           clear_cache=False, trim=0.0)
    assert len(stats) == 2
    assert all(s["mean"] > 0 for s in stats)

    ranked = pd.rank_values([("a", 5.0), ("b", 7.0)])
    assert ranked[0]["image_id"] == "b" and ranked[0]["rank"] == 1

    groups = pd.partition_significant(
        [("a", 10.0, 0.05, 30), ("b", 9.9, 0.05, 30), ("c", 1.0, 0.1, 30)])
    assert [g["label"] for g in groups] == ["A", "B"]
    assert groups[0]["members"] == ["a", "b"]

    rho = pd.spearman([("x", 1.0), ("y", 2.0)], [("x", 10.0), ("y", 20.0)])
    assert abs(rho - 1.0) < 1e-12

    agg = pd.harmonic_order([[2.0, 1.0], [4.0, 3.0]])
    assert agg["total_order"] == [0, 1]
    assert abs(agg["harmonic_means"][0] - 8.0 / 3.0) < 1e-12


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok: {test.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
