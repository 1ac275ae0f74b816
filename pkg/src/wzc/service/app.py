"""FastAPI service wrapping the codec pipeline.

Binary inputs and outputs (image files, containers) travel base64-encoded
inside JSON bodies. Malformed inputs map to HTTP 400 with a one-line detail;
a truncated container still decodes to a best-effort image and is reported
via the ``truncated`` response field rather than an error.
"""

from __future__ import annotations

import base64
import binascii
import math

from fastapi import FastAPI, HTTPException

from .. import bench as bench_mod
from ..bitstream import ContainerError, parse_container
from ..metrics import mse as mse_of
from ..metrics import psnr as psnr_of
from ..pipeline import CODEC_NAMES, WAVELET_NAMES, compress_pixmap, decompress_container
from ..pixmap import PixmapError, read_pixmap, write_pixmap
from . import schemas

app = FastAPI(title="wzc", description="Embedded wavelet zerotree image codec service")


def _b64_bytes(payload: str, what: str) -> bytes:
    try:
        return base64.b64decode(payload, validate=True)
    except (binascii.Error, ValueError):
        raise HTTPException(status_code=400, detail=f"{what} is not valid base64")


def _parse_image(payload: str, what: str):
    try:
        return read_pixmap(_b64_bytes(payload, what))
    except PixmapError as exc:
        raise HTTPException(status_code=400, detail=f"{what}: {exc}")


@app.get("/healthz")
def healthz():
    return {"status": "ok"}


@app.post("/compress", response_model=schemas.CompressResponse)
def compress(req: schemas.CompressRequest):
    image = _parse_image(req.image_b64, "image")
    try:
        blob = compress_pixmap(
            image,
            codec=req.codec,
            levels=req.levels,
            loops=req.loops,
            wavelet=req.wavelet,
            color_transform=req.color_transform,
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    bpp = 8.0 * len(blob) / (image.width * image.height * image.channels)
    return schemas.CompressResponse(
        container_b64=base64.b64encode(blob).decode(),
        compressed_bytes=len(blob),
        bpp=bpp,
        width=image.width,
        height=image.height,
        channels=image.channels,
    )


@app.post("/decompress", response_model=schemas.DecompressResponse)
def decompress(req: schemas.DecompressRequest):
    blob = _b64_bytes(req.container_b64, "container")
    try:
        decoded = decompress_container(blob)
    except ContainerError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    image_bytes = write_pixmap(decoded.pixmap, binary=not req.ascii_format)
    return schemas.DecompressResponse(
        image_b64=base64.b64encode(image_bytes).decode(),
        truncated=decoded.truncated,
        width=decoded.pixmap.width,
        height=decoded.pixmap.height,
        channels=decoded.pixmap.channels,
        colorspace=decoded.pixmap.colorspace.value,
    )


@app.post("/metrics", response_model=schemas.MetricsResponse)
def metrics(req: schemas.MetricsRequest):
    a = _parse_image(req.image_a_b64, "image_a")
    b = _parse_image(req.image_b_b64, "image_b")
    try:
        e = mse_of(a, b)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    p = psnr_of(e)
    return schemas.MetricsResponse(mse=e, psnr=None if math.isinf(p) else p)


@app.post("/info", response_model=schemas.InfoResponse)
def info(req: schemas.InfoRequest):
    blob = _b64_bytes(req.container_b64, "container")
    try:
        header, _payloads = parse_container(blob, allow_truncated=True)
    except ContainerError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return schemas.InfoResponse(
        codec=CODEC_NAMES[header.codec_id],
        wavelet=WAVELET_NAMES[header.wavelet_id],
        width=header.width,
        height=header.height,
        channels=header.channels,
        levels=header.levels,
        loops=header.loops,
        color_transform=header.color_transform,
        header_bytes=header.header_bytes,
        total_bytes=len(blob),
        channel_meta=[
            schemas.ChannelInfo(n0=n0, payload_bits=nbits)
            for n0, nbits in header.channel_meta
        ],
    )


@app.post("/bench", response_model=schemas.BenchResponse)
def bench(req: schemas.BenchRequest):
    image = _parse_image(req.image_b64, "image")
    cfg = bench_mod.SweepConfig(
        codecs=tuple(dict.fromkeys(req.codecs)),
        levels=tuple(req.levels),
        loops=req.loops,
        wavelet=req.wavelet,
        color_transform=req.color_transform,
    )
    table = bench_mod.run_sweep(image, cfg)
    rows = []
    for row in table.rows:
        if row.report is None:
            rows.append(
                schemas.BenchRow(
                    codec=row.codec, level=row.level, wall_time=row.wall_time, error=row.error
                )
            )
        else:
            rep = row.report
            rows.append(
                schemas.BenchRow(
                    codec=row.codec,
                    level=row.level,
                    mse=rep.mse,
                    psnr=None if math.isinf(rep.psnr) else rep.psnr,
                    cr_percent=rep.cr_percent,
                    bpp=rep.bpp,
                    compressed_bytes=rep.compressed_bytes,
                    wall_time=row.wall_time,
                )
            )
    report = bench_mod.emit_report(table, req.format).decode()
    return schemas.BenchResponse(rows=rows, report=report)


@app.get("/verify-paper", response_model=schemas.VerifyPaperResponse)
def verify_paper():
    v = bench_mod.verify_paper_tables()
    return schemas.VerifyPaperResponse(
        checks=[
            schemas.VerifyCheck(
                name=c.name,
                passed=c.passed,
                computed=c.computed,
                expected=c.expected,
                tolerance=c.tolerance,
            )
            for c in v.checks
        ],
        swap_flagged=v.swap_flagged,
        all_passed=v.all_passed,
        report=bench_mod.render_verification(v),
    )
