import numpy as np
import pytest

from wzc.bitstream import BadMagicError, parse_container
from wzc.pipeline import compress_pixmap, decompress_container
from wzc.pixmap import Colorspace, from_planes, gray


def _image(size=32, channels=3, seed=5):
    rng = np.random.default_rng(seed)
    y, x = np.indices((size, size))
    base = 90 + 70 * np.sin(x / 6) + 50 * np.cos(y / 9) + rng.normal(0, 3, (size, size))
    if channels == 1:
        return gray(np.clip(base, 0, 255).astype(np.uint8))
    planes = [np.clip(base + s, 0, 255).astype(np.uint8) for s in (0, 12, -18)]
    return from_planes(planes, Colorspace.RGB)


@pytest.mark.parametrize("codec", ["spiht", "stw"])
@pytest.mark.parametrize("channels", [1, 3])
def test_full_loops_haar_no_ycc_within_one(codec, channels):
    img = _image(channels=channels)
    blob = compress_pixmap(img, codec=codec, levels=3, loops=20, wavelet="haar", color_transform=False)
    out = decompress_container(blob)
    assert not out.truncated
    dev = np.abs(out.pixmap.samples.astype(int) - img.samples.astype(int)).max()
    assert dev <= 1


def test_color_transform_flag_roundtrips():
    img = _image()
    blob = compress_pixmap(img, levels=3, loops=8, color_transform=True)
    header, _ = parse_container(blob)
    assert header.color_transform
    out = decompress_container(blob)
    assert out.pixmap.colorspace is Colorspace.RGB
    blob = compress_pixmap(img, levels=3, loops=8, color_transform=False)
    header, _ = parse_container(blob)
    assert not header.color_transform


def test_gray_image_never_color_transformed():
    img = _image(channels=1)
    blob = compress_pixmap(img, levels=3, loops=6, color_transform=True)
    header, _ = parse_container(blob)
    assert not header.color_transform
    assert header.channels == 1
    out = decompress_container(blob)
    assert out.pixmap.colorspace is Colorspace.GRAY


def test_more_loops_never_worse():
    img = _image()
    prev = None
    for loops in (2, 4, 6, 9, 12):
        blob = compress_pixmap(img, levels=3, loops=loops, wavelet="cdf97")
        out = decompress_container(blob)
        err = float(np.mean((out.pixmap.samples.astype(float) - img.samples.astype(float)) ** 2))
        if prev is not None:
            assert err <= prev + 1e-9
        prev = err


def test_divisibility_error():
    img = _image(size=24)
    with pytest.raises(ValueError):
        compress_pixmap(img, levels=4)


def test_rejects_bad_args():
    img = _image()
    with pytest.raises(ValueError):
        compress_pixmap(img, codec="lzw")
    with pytest.raises(ValueError):
        compress_pixmap(img, wavelet="db4")


def test_truncated_container_best_effort():
    img = _image()
    blob = compress_pixmap(img, levels=3, loops=10)
    out = decompress_container(blob[: len(blob) // 2])
    assert out.truncated
    assert out.pixmap.samples.shape == img.samples.shape


def test_bad_magic_raises():
    with pytest.raises(BadMagicError):
        decompress_container(b"NOPE" + b"\x00" * 30)


def test_empty_channel_decodes_black():
    img = gray(np.zeros((16, 16), np.uint8))
    blob = compress_pixmap(img, levels=2, loops=4, wavelet="haar", color_transform=False)
    header, payloads = parse_container(blob)
    assert header.channel_meta[0][0] is None  # EMPTY sentinel
    assert payloads[0] == bytearray()
    out = decompress_container(blob)
    assert not out.truncated
    assert np.all(out.pixmap.samples == 0)


def test_deterministic_bytes():
    img = _image()
    a = compress_pixmap(img, levels=3, loops=7)
    b = compress_pixmap(img, levels=3, loops=7)
    assert a == b
