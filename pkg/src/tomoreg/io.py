"""Binary file formats for images and sinograms, plus CSV/JSON emitters.

IMG1: magic "IMGF0001", u32 LE side count, f64 LE tau, row-major f64 LE values.
SIN1: magic "SINF0001", u32 LE p, u32 LE q, f64 LE rho, angle-major f64 LE values.
"""

import csv
import json
import struct
from pathlib import Path

import numpy as np

from .phantoms import Image2D
from .radon import Sinogram

IMG_MAGIC = b"IMGF0001"
SIN_MAGIC = b"SINF0001"


class FormatError(ValueError):
    """Malformed binary file; message names the failing byte offset."""


class _Reader:
    def __init__(self, path):
        self.path = str(path)
        self.data = Path(path).read_bytes()
        self.off = 0

    def take(self, n, what):
        if len(self.data) < self.off + n:
            raise FormatError(
                f"{self.path}: truncated at byte {len(self.data)}, "
                f"need {self.off + n} bytes for {what}")
        chunk = self.data[self.off:self.off + n]
        self.off += n
        return chunk

    def expect_magic(self, magic):
        got = self.take(len(magic), "magic")
        if got != magic:
            raise FormatError(
                f"{self.path}: bad magic {got!r} at byte 0, expected {magic!r}")

    def u32(self, what):
        return struct.unpack("<I", self.take(4, what))[0]

    def f64(self, what):
        return struct.unpack("<d", self.take(8, what))[0]

    def values(self, count, what):
        raw = self.take(8 * count, what)
        return np.frombuffer(raw, dtype="<f8", count=count).astype(float)


def write_image(path, img: Image2D):
    side = img.values.shape[0]
    with open(path, "wb") as fh:
        fh.write(IMG_MAGIC)
        fh.write(struct.pack("<I", side))
        fh.write(struct.pack("<d", img.tau))
        fh.write(np.ascontiguousarray(img.values, dtype="<f8").tobytes())


def read_image(path) -> Image2D:
    r = _Reader(path)
    r.expect_magic(IMG_MAGIC)
    side = r.u32("side count")
    if side < 3 or side % 2 != 1:
        raise FormatError(f"{r.path}: side count {side} is not an odd value >= 3")
    tau = r.f64("tau")
    vals = r.values(side * side, f"{side}x{side} image values")
    return Image2D(vals.reshape(side, side), tau)


def write_sinogram(path, sino: Sinogram):
    with open(path, "wb") as fh:
        fh.write(SIN_MAGIC)
        fh.write(struct.pack("<I", sino.p))
        fh.write(struct.pack("<I", sino.q))
        fh.write(struct.pack("<d", sino.rho))
        fh.write(np.ascontiguousarray(sino.values, dtype="<f8").tobytes())


def read_sinogram(path) -> Sinogram:
    r = _Reader(path)
    r.expect_magic(SIN_MAGIC)
    p = r.u32("angle count p")
    q = r.u32("radial half-count q")
    if p < 2 or q < 1:
        raise FormatError(f"{r.path}: need p >= 2 and q >= 1, got p={p} q={q}")
    rho = r.f64("rho")
    vals = r.values(p * (2 * q + 1), f"{p}x{2 * q + 1} sinogram values")
    return Sinogram(vals.reshape(p, 2 * q + 1), q=q, rho=rho)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in row])


def write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
