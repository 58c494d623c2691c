"""Dataset types, slice preparation, ROI derivation, and disk layout.

Images are magnitude slices prepared to a fixed 160x160 grid with values
in [0, 1].  Segmentation masks use labels {0: background, 1: RV, 2: MC,
3: LV}.  The diagnostic region of interest is a fixed 60x60 window whose
center is derived from the segmentation bounding box.
"""

import csv
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConfigError,
    DataError,
    EmptyMaskError,
    EmptySplitError,
    IngestionError,
    ParameterError,
)

IMAGE_SIZE = 160
ROI_SIZE = 60
SEG_LABELS = (0, 1, 2, 3)
LABEL_NAMES = {1: "RV", 2: "MC", 3: "LV"}
SPLIT_ROLES = ("train", "val", "test")


@dataclass
class ImageSlice:
    """A prepared magnitude image: 160x160, values in [0, 1]."""

    pixels: np.ndarray
    slice_id: str = ""

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels)
        if self.pixels.ndim != 2 or self.pixels.shape != (IMAGE_SIZE, IMAGE_SIZE):
            raise DataError(
                f"image slice must be {IMAGE_SIZE}x{IMAGE_SIZE}, got {self.pixels.shape}"
            )
        if not np.all(np.isfinite(self.pixels)):
            raise DataError("image slice contains non-finite values")
        if self.pixels.min() < 0.0 or self.pixels.max() > 1.0:
            raise DataError("image slice values must lie in [0, 1]")


@dataclass
class SegMask:
    """Integer label map with values restricted to {0, 1, 2, 3}."""

    labels: np.ndarray

    def __post_init__(self):
        self.labels = np.asarray(self.labels)
        if self.labels.ndim != 2:
            raise DataError("segmentation mask must be 2-D")
        if not np.isin(self.labels, SEG_LABELS).all():
            raise DataError("segmentation labels must lie in {0, 1, 2, 3}")
        self.labels = self.labels.astype(np.int64, copy=False)


@dataclass
class ROISpec:
    """Center and fixed extent of the 60x60 diagnostic window."""

    center_row: int
    center_col: int
    height: int = ROI_SIZE
    width: int = ROI_SIZE

    def __post_init__(self):
        r0, c0 = self.row0, self.col0
        if r0 < 0 or c0 < 0 or r0 + self.height > IMAGE_SIZE or c0 + self.width > IMAGE_SIZE:
            raise ParameterError(
                f"ROI window {self.height}x{self.width} centered at "
                f"({self.center_row}, {self.center_col}) falls outside the "
                f"{IMAGE_SIZE}x{IMAGE_SIZE} image"
            )

    @property
    def row0(self):
        return self.center_row - self.height // 2

    @property
    def col0(self):
        return self.center_col - self.width // 2


@dataclass
class DatasetItem:
    image: ImageSlice
    seg: "SegMask | None" = None
    roi: "ROISpec | None" = None


@dataclass
class DatasetSplit:
    """An ordered collection of slices with a train/val/test role."""

    items: list
    role: str = "train"

    def __post_init__(self):
        if self.role not in SPLIT_ROLES:
            raise ParameterError(f"split role must be one of {SPLIT_ROLES}, got {self.role!r}")

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def prepare_slice(raw, slice_id=""):
    """Prepare a raw 2-D array: fit to 160x160 and min-max normalize to [0, 1].

    Larger axes are center-cropped (floor offsets); smaller axes are
    zero-padded symmetrically (extra pixel goes after).  Normalization runs
    on the fitted array, so padding zeros participate in the min.  Constant
    arrays map to all-zeros.  Idempotent on already-prepared slices.
    """
    raw = np.asarray(raw, dtype=np.float64)
    if raw.ndim != 2 or raw.shape[0] < 1 or raw.shape[1] < 1:
        raise ParameterError(f"expected a non-empty 2-D array, got shape {raw.shape}")
    if not np.all(np.isfinite(raw)):
        raise DataError("raw slice contains non-finite values")

    out = raw
    for axis in (0, 1):
        n = out.shape[axis]
        if n > IMAGE_SIZE:
            off = (n - IMAGE_SIZE) // 2
            sl = [slice(None), slice(None)]
            sl[axis] = slice(off, off + IMAGE_SIZE)
            out = out[tuple(sl)]
        elif n < IMAGE_SIZE:
            before = (IMAGE_SIZE - n) // 2
            after = IMAGE_SIZE - n - before
            pad = [(0, 0), (0, 0)]
            pad[axis] = (before, after)
            out = np.pad(out, pad)

    mn, mx = out.min(), out.max()
    if mx > mn:
        out = (out - mn) / (mx - mn)
    else:
        out = np.zeros_like(out)
    return ImageSlice(out, slice_id=slice_id)


def roi_from_seg(mask):
    """ROI centered on the midpoint of the tight foreground bounding box.

    Midpoints use integer floor division; centers are clamped so the
    window fits inside the image.  Raises EmptyMaskError when the mask has
    no foreground.
    """
    labels = mask.labels if isinstance(mask, SegMask) else np.asarray(mask)
    rows, cols = np.nonzero(labels)
    if rows.size == 0:
        raise EmptyMaskError("segmentation mask has no foreground pixels")
    cr = int(rows.min() + rows.max()) // 2
    cc = int(cols.min() + cols.max()) // 2
    half = ROI_SIZE // 2
    cr = min(max(cr, half), IMAGE_SIZE - half)
    cc = min(max(cc, half), IMAGE_SIZE - half)
    return ROISpec(cr, cc)


def crop_roi(image, roi):
    """Extract the exact ROI sub-array (no interpolation)."""
    pixels = image.pixels if isinstance(image, ImageSlice) else np.asarray(image)
    r0, c0 = roi.row0, roi.col0
    return pixels[r0:r0 + roi.height, c0:c0 + roi.width].copy()


def embed_roi(base, patch, roi):
    """Return a copy of `base` with the ROI window replaced by `patch`."""
    pixels = base.pixels if isinstance(base, ImageSlice) else np.asarray(base)
    out = pixels.copy()
    r0, c0 = roi.row0, roi.col0
    out[r0:r0 + roi.height, c0:c0 + roi.width] = patch
    return out


# --- test-time ROI providers -------------------------------------------------

def _oracle_roi(item):
    if item.roi is not None:
        return item.roi
    if item.seg is None:
        raise ConfigError(
            f"oracle ROI mode needs a segmentation mask for slice {item.image.slice_id!r}"
        )
    return roi_from_seg(item.seg)


def _center_roi(item):
    return ROISpec(IMAGE_SIZE // 2, IMAGE_SIZE // 2)


ROI_MODES = {"oracle": _oracle_roi, "center": _center_roi}


def roi_provider(mode):
    """Pluggable test-ROI provider: 'oracle' (mask-derived) or 'center'."""
    try:
        return ROI_MODES[mode]
    except KeyError:
        raise ConfigError(f"unknown roi mode {mode!r}; expected one of {sorted(ROI_MODES)}")


# --- PGM raster i/o ----------------------------------------------------------
#
# Images are stored as binary PGM (P5) with maxval 65535, big-endian;
# segmentation masks as P5 with maxval 3 (one byte per pixel).

def write_pgm(path, values, maxval):
    values = np.asarray(values)
    if values.min() < 0 or values.max() > maxval:
        raise DataError(f"pgm values out of range [0, {maxval}]")
    dtype = ">u2" if maxval > 255 else "u1"
    with open(path, "wb") as fh:
        fh.write(f"P5\n{values.shape[1]} {values.shape[0]}\n{maxval}\n".encode("ascii"))
        fh.write(values.astype(dtype).tobytes())


def read_pgm(path):
    """Read a binary PGM; returns (int array, maxval)."""
    with open(path, "rb") as fh:
        data = fh.read()

    # header: magic, width, height, maxval as whitespace/comment separated tokens
    tokens, pos = [], 0
    while len(tokens) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos >= len(data):
            raise IngestionError(f"truncated PGM header in {path}")
        if data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] != b"\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        tokens.append(data[start:pos])
    pos += 1  # single whitespace after maxval

    if tokens[0] != b"P5":
        raise IngestionError(f"{path} is not a binary PGM (P5) file")
    width, height, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    dtype = ">u2" if maxval > 255 else "u1"
    count = width * height
    arr = np.frombuffer(data, dtype=dtype, count=count, offset=pos)
    if arr.size != count:
        raise IngestionError(f"truncated pixel data in {path}")
    return arr.reshape(height, width).astype(np.int64), maxval


def write_image_pgm(path, image):
    pixels = image.pixels if isinstance(image, ImageSlice) else np.asarray(image)
    write_pgm(path, np.round(pixels * 65535.0).astype(np.int64), 65535)


def read_image_pgm(path):
    arr, maxval = read_pgm(path)
    return arr.astype(np.float64) / float(maxval)


# --- dataset layout ----------------------------------------------------------
#
# root/{train,val,test}/images/<slice_id>.pgm       16-bit magnitude image
# root/{train,val,test}/masks/<slice_id>.pgm        labels {0,1,2,3}, optional for test
# root/<split>/rois.csv                             slice_id,center_row,center_col (optional)

def save_dataset(split, root):
    """Write a DatasetSplit under `root` in the on-disk layout."""
    base = os.path.join(root, split.role)
    img_dir = os.path.join(base, "images")
    mask_dir = os.path.join(base, "masks")
    os.makedirs(img_dir, exist_ok=True)
    os.makedirs(mask_dir, exist_ok=True)
    for item in split.items:
        sid = item.image.slice_id
        write_image_pgm(os.path.join(img_dir, f"{sid}.pgm"), item.image)
        if item.seg is not None:
            write_pgm(os.path.join(mask_dir, f"{sid}.pgm"), item.seg.labels, 3)


def _read_roi_csv(path):
    rois = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rois[row["slice_id"]] = ROISpec(int(row["center_row"]), int(row["center_col"]))
    return rois


def load_dataset(root, role):
    """Load one split; slices are passed through prepare_slice and sorted by id.

    Train and val items must carry segmentation masks (their ROI comes from
    rois.csv when listed, otherwise from the mask bounding box).  Test items
    may omit masks; their ROI is left to the test-ROI provider unless
    rois.csv supplies one.
    """
    if role not in SPLIT_ROLES:
        raise ParameterError(f"split role must be one of {SPLIT_ROLES}, got {role!r}")
    base = os.path.join(root, role)
    img_dir = os.path.join(base, "images")
    if not os.path.isdir(img_dir):
        raise IngestionError(f"missing images directory {img_dir}")
    names = sorted(n for n in os.listdir(img_dir) if n.endswith(".pgm"))
    if not names:
        raise EmptySplitError(f"no image files in {img_dir}")

    roi_csv = os.path.join(base, "rois.csv")
    csv_rois = _read_roi_csv(roi_csv) if os.path.isfile(roi_csv) else {}

    items = []
    for name in names:
        sid = name[:-4]
        image = prepare_slice(read_image_pgm(os.path.join(img_dir, name)), slice_id=sid)

        seg = None
        mask_path = os.path.join(base, "masks", name)
        if os.path.isfile(mask_path):
            labels, _ = read_pgm(mask_path)
            if labels.shape != image.pixels.shape:
                raise DataError(
                    f"mask/image shape mismatch for slice {sid!r}: "
                    f"{labels.shape} vs {image.pixels.shape}"
                )
            seg = SegMask(labels)
        elif role in ("train", "val"):
            raise IngestionError(f"slice {sid!r} has no segmentation mask in {role} split")

        roi = csv_rois.get(sid)
        if roi is None and role in ("train", "val"):
            roi = roi_from_seg(seg)
        items.append(DatasetItem(image=image, seg=seg, roi=roi))

    return DatasetSplit(items=items, role=role)
