"""Regenerate the toy word-vector tables bundled in ``src/gapping/data``.

Words are grouped into coarse semantic classes; each class gets its own axis
and every word is its class centroid plus small Gaussian noise, so that
parallel arguments ("books"/"flowers", "in May"/"in June") end up close.
"""

from pathlib import Path

import numpy as np

DIM = 16
SCALE = 3.0
NOISE = 0.15

EN_CLASSES = {
    "person": "John Mary Paul Kim Lee Alice Bob Carol Eve Al Sue Tom Ann Jim Kate Sam "
              "Smith Jones Goldwater Schweiker Lincoln Douglas",
    "pronoun": "i she he they we you it",
    "place": "Arizona Pennsylvania Paris Rome",
    "time": "May June morning evening",
    "food": "coffee tea pizza pasta",
    "text": "books novels poems novel play book letter CD pen",
    "instrument": "piano guitar drums",
    "plant": "flowers roses",
    "household": "cups plates shelf cupboard",
    "group": "boys girls boy girl committee board voters critics cat",
    "role": "senator chairman honest",
    "verb": "bought likes ate reads plays gave sent put wanted wants try begin write "
            "elected named considered visited drinks sleeps sings dances",
    "function": "to a the in on and , .",
}
SV_CLASSES = {
    "place": "Ullnaområdet industriområde Märsta Jordbro",
    "verb": "tänks öka",
    "function": "med , .",
    "number": "9000 7000 4000",
}
# pronouns sit between their own axis and the person axis
BLEND = {"pronoun": "person"}


def build(classes, seed):
    rng = np.random.default_rng(seed)
    axes = {name: i for i, name in enumerate(sorted(set(EN_CLASSES) | set(SV_CLASSES)))}
    rows = []
    for name, words in classes.items():
        centroid = np.zeros(DIM)
        if name in BLEND:
            centroid[axes[name]] = SCALE * 2 / 3
            centroid[axes[BLEND[name]]] = SCALE * 2 / 3
        else:
            centroid[axes[name]] = SCALE
        for word in words.split():
            vec = centroid + rng.normal(0.0, NOISE, DIM)
            rows.append(word + " " + " ".join(f"{x:.6f}" for x in vec))
    return "\n".join(rows) + "\n"


if __name__ == "__main__":
    out = Path(__file__).resolve().parents[1] / "src" / "gapping" / "data"
    (out / "toy_en.txt").write_text(build(EN_CLASSES, 0), encoding="utf-8")
    (out / "toy_sv.txt").write_text(build(SV_CLASSES, 1), encoding="utf-8")
