from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from PIL import Image

from wavetext.raster import ImageFormatError, load_image, pad_to_even, save_gray, save_mask, to_gray

channel = st.integers(0, 255)


def luma_oracle(r, g, b):
    y = Fraction(299, 1000) * r + Fraction(587, 1000) * g + Fraction(114, 1000) * b
    return min(255, int(y + Fraction(1, 2)))


@pytest.mark.parametrize("rgb, expected", [((0, 0, 0), 0), ((255, 255, 255), 255), ((255, 0, 0), 76)])
def test_to_gray_examples(rgb, expected):
    assert to_gray(*rgb) == expected


@given(channel, channel, channel)
def test_to_gray_matches_exact_rounding(r, g, b):
    assert to_gray(r, g, b) == luma_oracle(r, g, b)


@given(channel, channel, channel, st.integers(0, 2), st.integers(1, 255))
def test_to_gray_monotone(r, g, b, which, bump):
    rgb = [r, g, b]
    up = list(rgb)
    up[which] = min(255, up[which] + bump)
    assert to_gray(*up) >= to_gray(*rgb)


def test_to_gray_equal_channels_identity():
    v = np.arange(256)
    assert np.array_equal(to_gray(v, v, v), v)


def _write(path, data: bytes):
    path.write_bytes(data)
    return path


def test_load_pgm_identity(tmp_path):
    p = _write(tmp_path / "a.pgm", b"P5\n2 2\n255\n" + bytes([0, 255, 128, 64]))
    img = load_image(p)
    assert img.dtype == np.uint8
    assert img.shape == (2, 2)
    assert img.ravel().tolist() == [0, 255, 128, 64]


def test_load_pgm_with_comments(tmp_path):
    p = _write(tmp_path / "c.pgm", b"P5\n# made by hand\n3 1\n# max\n255\n" + bytes([1, 2, 3]))
    assert load_image(p).tolist() == [[1, 2, 3]]


def test_load_pgm_pixel_byte_that_looks_like_whitespace(tmp_path):
    p = _write(tmp_path / "w.pgm", b"P5 2 1 255\n" + bytes([10, 32]))
    assert load_image(p).tolist() == [[10, 32]]


def test_load_pgm_truncated(tmp_path):
    p = _write(tmp_path / "t.pgm", b"P5\n4 4\n255\n" + bytes(3))
    with pytest.raises(ImageFormatError, match="truncated"):
        load_image(p)


def test_load_pgm_16bit_rejected(tmp_path):
    p = _write(tmp_path / "d.pgm", b"P5\n1 1\n65535\n\x00\x00")
    with pytest.raises(ImageFormatError):
        load_image(p)


def test_load_png_solid_red(tmp_path):
    p = tmp_path / "red.png"
    Image.new("RGB", (4, 4), (255, 0, 0)).save(p)
    img = load_image(p)
    assert img.shape == (4, 4)
    assert (img == 76).all()


def test_load_png_gray(tmp_path):
    data = np.arange(12, dtype=np.uint8).reshape(3, 4) * 20
    p = tmp_path / "g.png"
    Image.fromarray(data, mode="L").save(p)
    assert np.array_equal(load_image(p), data)


def test_load_png_alpha_composited_over_white(tmp_path):
    p = tmp_path / "rgba.png"
    px = np.zeros((1, 3, 4), dtype=np.uint8)
    px[0, 0] = (0, 0, 0, 0)  # transparent -> white
    px[0, 1] = (0, 0, 0, 255)  # opaque black
    px[0, 2] = (255, 0, 0, 255)  # opaque red
    Image.fromarray(px, mode="RGBA").save(p)
    assert load_image(p).tolist() == [[255, 0, 76]]


def test_load_missing_file_is_oserror(tmp_path):
    missing = tmp_path / "nope.png"
    with pytest.raises(OSError) as info:
        load_image(missing)
    assert "nope.png" in str(info.value)


def test_load_unknown_format(tmp_path):
    p = _write(tmp_path / "x.jpg", b"\xff\xd8\xff\xe0junk")
    with pytest.raises(ImageFormatError) as info:
        load_image(p)
    assert "x.jpg" in str(info.value)


def test_pad_even_unchanged():
    img = np.arange(16, dtype=np.uint8).reshape(4, 4)
    assert pad_to_even(img) is img


def test_pad_odd_width_replicates_last_column():
    img = np.arange(12, dtype=np.uint8).reshape(4, 3)
    out = pad_to_even(img)
    assert out.shape == (4, 4)
    assert np.array_equal(out[:, 3], out[:, 2])
    assert np.array_equal(out[:, :3], img)


def test_pad_single_pixel():
    out = pad_to_even(np.array([[9]], dtype=np.uint8))
    assert out.tolist() == [[9, 9], [9, 9]]


@settings(max_examples=50)
@given(arrays(np.uint8, st.tuples(st.integers(1, 9), st.integers(1, 9))))
def test_pad_properties(img):
    out = pad_to_even(img)
    assert out.shape[0] % 2 == 0 and out.shape[1] % 2 == 0
    h, w = img.shape
    assert np.array_equal(out[:h, :w], img)


@settings(max_examples=50)
@given(arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12))))
def test_gray_round_trip(tmp_path_factory, img):
    p = tmp_path_factory.mktemp("rt") / "img.pgm"
    save_gray(img, p)
    assert np.array_equal(load_image(p), img)


def test_mask_dumps(tmp_path):
    save_mask(np.zeros((3, 5), bool), tmp_path / "f.pgm")
    save_mask(np.ones((3, 5), bool), tmp_path / "t.pgm")
    assert (load_image(tmp_path / "f.pgm") == 0).all()
    assert (load_image(tmp_path / "t.pgm") == 255).all()


def test_mask_round_trip(tmp_path):
    m = np.random.default_rng(3).random((7, 9)) > 0.5
    save_mask(m, tmp_path / "m.pgm")
    assert np.array_equal(load_image(tmp_path / "m.pgm") == 255, m)
