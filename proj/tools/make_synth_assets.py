#!/usr/bin/env python3
"""Writes a small Taiwan-style template and glyph atlas for `leakaudit synth`."""
import argparse
import json
from pathlib import Path

from PIL import Image, ImageDraw, ImageFont

FONT = "/usr/share/fonts/truetype/dejavu/DejaVuSansMono-Bold.ttf"
SYMBOLS = [c for c in "ABCDEFGHJKLMNPQRSTUVWXYZ0123456789"]
W, H = 320, 90
BOX_W, BOX_H, TOP = 36, 62, 14


def boxes():
    # LLL-DDDD with a gap where the dash is painted
    xs = [14, 54, 94, 152, 192, 232, 272]
    return [[x, TOP, BOX_W, BOX_H] for x in xs]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out", type=Path)
    args = ap.parse_args()
    out = args.out
    (out / "glyphs").mkdir(parents=True, exist_ok=True)

    tpl = Image.new("RGB", (W, H), (236, 238, 232))
    d = ImageDraw.Draw(tpl)
    d.rectangle([2, 2, W - 3, H - 3], outline=(30, 30, 30), width=3)
    d.rectangle([134, 42, 146, 48], fill=(20, 20, 20))
    tpl.save(out / "template.png")

    font = ImageFont.truetype(FONT, 64)
    glyphs = {}
    for s in SYMBOLS:
        l, t, r, b = font.getbbox(s)
        g = Image.new("RGB", (r - l + 4, b - t + 4), (255, 255, 255))
        ImageDraw.Draw(g).text((2 - l, 2 - t), s, font=font, fill=(0, 0, 0))
        g.save(out / "glyphs" / f"{s}.png")
        glyphs[s] = f"glyphs/{s}.png"
    (out / "atlas.json").write_text(json.dumps({"glyphs": glyphs}, indent=2) + "\n")

    config = {
        "template": "template.png",
        "atlas": "atlas.json",
        "pattern": "taiwan",
        "boxes": boxes(),
        "ink": [20, 20, 20],
        "transforms": {
            "perspective_radius": 0.06,
            "noise_sigma": 4.0,
            "shadow_probability": 0.3,
            "shadow_opacity": [0.2, 0.5],
            "hue_jitter": 8.0,
            "saturation_jitter": 0.2,
            "brightness_jitter": 0.25,
        },
        "count": 20,
        "seed": 1,
        "output_dir": "out",
    }
    (out / "synth_config.json").write_text(json.dumps(config, indent=2) + "\n")


if __name__ == "__main__":
    main()
