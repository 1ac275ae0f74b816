"""Command-line client for the codec service.

Every subcommand is a thin HTTP client over the service API. By default
requests are dispatched to an in-process application instance (no server
needed); pass ``--server http://host:port`` to target a running instance.
``wzc serve`` starts the service with uvicorn.
"""

from __future__ import annotations

import argparse
import asyncio
import base64
import sys

import httpx


class CliError(Exception):
    pass


def _client(server: str | None) -> httpx.AsyncClient:
    if server:
        return httpx.AsyncClient(base_url=server, timeout=600.0)
    from .service.app import app

    return httpx.AsyncClient(
        transport=httpx.ASGITransport(app=app), base_url="http://wzc.internal", timeout=None
    )


def _call(server: str | None, method: str, path: str, payload: dict | None = None) -> dict:
    async def run():
        async with _client(server) as client:
            r = await client.request(method, path, json=payload)
            if r.status_code != 200:
                try:
                    detail = r.json().get("detail", r.text)
                except ValueError:
                    detail = r.text
                raise CliError(f"{detail}")
            return r.json()

    return asyncio.run(run())


def _read_b64(path: str) -> str:
    try:
        with open(path, "rb") as fh:
            return base64.b64encode(fh.read()).decode()
    except OSError as exc:
        raise CliError(str(exc))


def _write_file(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise CliError(str(exc))


def _parse_levels(spec: str) -> list[int]:
    """Accepts '4', '1..8' and '1,2,5'."""
    try:
        if ".." in spec:
            lo, hi = spec.split("..")
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ValueError
            return list(range(lo_i, hi_i + 1))
        return [int(tok) for tok in spec.split(",")]
    except ValueError:
        raise CliError(f"bad level spec {spec!r}; use N, A..B or a comma list")


def cmd_compress(args) -> int:
    payload = {
        "image_b64": _read_b64(args.input),
        "codec": args.codec,
        "levels": args.levels,
        "loops": args.loops,
        "wavelet": args.wavelet,
        "color_transform": not args.no_ycc,
    }
    resp = _call(args.server, "POST", "/compress", payload)
    _write_file(args.output, base64.b64decode(resp["container_b64"]))
    print(f"{resp['compressed_bytes']} bytes, {resp['bpp']:.4f} bpp")
    return 0


def cmd_decompress(args) -> int:
    payload = {"container_b64": _read_b64(args.input), "ascii_format": args.ascii}
    resp = _call(args.server, "POST", "/decompress", payload)
    _write_file(args.output, base64.b64decode(resp["image_b64"]))
    if resp["truncated"]:
        print("TRUNCATED: container payload ended early, wrote partial image", file=sys.stderr)
        return 1
    print(f"wrote {args.output} ({resp['width']}x{resp['height']}, {resp['channels']} channel(s))")
    return 0


def cmd_info(args) -> int:
    resp = _call(args.server, "POST", "/info", {"container_b64": _read_b64(args.input)})
    for key in (
        "codec", "wavelet", "width", "height", "channels", "levels", "loops",
        "color_transform", "header_bytes", "total_bytes",
    ):
        print(f"{key}: {resp[key]}")
    for i, meta in enumerate(resp["channel_meta"]):
        n0 = "EMPTY" if meta["n0"] is None else meta["n0"]
        print(f"channel {i}: n0 {n0}, payload_bits {meta['payload_bits']}")
    return 0


def cmd_metrics(args) -> int:
    payload = {"image_a_b64": _read_b64(args.image_a), "image_b_b64": _read_b64(args.image_b)}
    resp = _call(args.server, "POST", "/metrics", payload)
    p = "inf" if resp["psnr"] is None else f"{resp['psnr']:.2f}"
    print(f"MSE {resp['mse']:g}, PSNR {p}")
    return 0


def cmd_bench(args) -> int:
    payload = {
        "image_b64": _read_b64(args.input),
        "codecs": args.codecs.split(","),
        "levels": _parse_levels(args.levels),
        "loops": args.loops,
        "wavelet": args.wavelet,
        "color_transform": not args.no_ycc,
        "format": args.format,
    }
    resp = _call(args.server, "POST", "/bench", payload)
    sys.stdout.write(resp["report"])
    failures = [r for r in resp["rows"] if r.get("error")]
    for r in failures:
        print(f"error: {r['codec']} level {r['level']}: {r['error']}", file=sys.stderr)
    return 1 if failures else 0


def cmd_verify_paper(args) -> int:
    resp = _call(args.server, "GET", "/verify-paper")
    sys.stdout.write(resp["report"])
    return 0 if resp["all_passed"] else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wzc", description=__doc__)
    parser.add_argument("--server", help="service base URL (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a PGM/PPM image to a WZC1 container")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--codec", choices=["spiht", "stw"], default="spiht")
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--loops", type=int, default=10)
    p.add_argument("--wavelet", choices=["cdf97", "haar"], default="cdf97")
    p.add_argument("--no-ycc", action="store_true", help="skip the color transform")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="decode a WZC1 container to PGM/PPM")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--ascii", action="store_true", help="write P2/P3 instead of P5/P6")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("info", help="print container header fields")
    p.add_argument("input")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("metrics", help="MSE/PSNR between two images")
    p.add_argument("image_a")
    p.add_argument("image_b")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("bench", help="level sweep over one image")
    p.add_argument("input")
    p.add_argument("--codecs", default="spiht,stw")
    p.add_argument("--levels", default="1..8")
    p.add_argument("--loops", type=int, default=10)
    p.add_argument("--wavelet", choices=["cdf97", "haar"], default="cdf97")
    p.add_argument("--no-ycc", action="store_true")
    p.add_argument("--format", choices=["markdown", "csv"], default="markdown")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify-paper", help="re-derive the published table arithmetic")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except httpx.HTTPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
