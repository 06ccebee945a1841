#!/usr/bin/env python3
# Copyright 2026 The ExAL Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Convert the digit JSON files of the `mnist` npm package into IDX files.

The package ships the 10,000 MNIST test digits as one JSON file per digit,
each a flat list of 784-pixel rows scaled to [0, 1] with three decimals.
Pixels are mapped back to bytes with round(v * 255).
"""
import argparse
import json
import pathlib
import struct


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("digits_dir", type=pathlib.Path, help="package/src/digits directory")
    parser.add_argument("out_dir", type=pathlib.Path)
    args = parser.parse_args()

    images = bytearray()
    labels = bytearray()
    for digit in range(10):
        data = json.loads((args.digits_dir / f"{digit}.json").read_text())["data"]
        if len(data) % 784:
            raise SystemExit(f"{digit}.json: length {len(data)} is not a multiple of 784")
        images.extend(max(0, min(255, round(v * 255))) for v in data)
        labels.extend([digit] * (len(data) // 784))

    n = len(labels)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    (args.out_dir / "images-idx3-ubyte").write_bytes(struct.pack(">IIII", 0x803, n, 28, 28) + bytes(images))
    (args.out_dir / "labels-idx1-ubyte").write_bytes(struct.pack(">II", 0x801, n) + bytes(labels))
    print(f"wrote {n} images to {args.out_dir}")


if __name__ == "__main__":
    main()
