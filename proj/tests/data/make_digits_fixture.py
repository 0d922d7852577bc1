"""Write the scikit-learn 8x8 digits as IDX files (train/test split).

Pixel values 0..16 are rescaled to 0..255. The split is a fixed-seed
permutation: the last 200 samples form the test set.
"""
import struct
from pathlib import Path

import numpy as np
from sklearn.datasets import load_digits


def write_idx(stem: Path, images: np.ndarray, labels: np.ndarray) -> None:
    n, rows, cols = images.shape
    with open(f"{stem}-images.idx", "wb") as f:
        f.write(struct.pack(">IIII", 0x803, n, rows, cols))
        f.write(images.astype(np.uint8).tobytes())
    with open(f"{stem}-labels.idx", "wb") as f:
        f.write(struct.pack(">II", 0x801, n))
        f.write(labels.astype(np.uint8).tobytes())


def main() -> None:
    digits = load_digits()
    images = np.rint(digits.images * 255.0 / 16.0).clip(0, 255)
    order = np.random.default_rng(2024).permutation(len(images))
    images, labels = images[order], digits.target[order]
    out = Path(__file__).resolve().parent
    write_idx(out / "digits-train", images[:-200], labels[:-200])
    write_idx(out / "digits-test", images[-200:], labels[-200:])


if __name__ == "__main__":
    main()
