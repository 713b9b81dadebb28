#!/usr/bin/env python3
"""Regenerates the builtin classroom files under data/.

The published classroom summaries fix the layout, the roster size, the
front/back requirement lists, the number of conflict edges and the number
of students involved in conflicts, but not the individual conflict pairs.
This script fills that gap with a planted construction: it draws a seating
that honours every requirement, then samples exactly the published number
of conflict edges among pairs that this seating keeps apart (same row with
a free desk between them, or rows that are not consecutive). Every file is
therefore solvable with zero active edges.

It also writes a hand-style seating for classroom I with 12 active edges,
only 4 of which keep the minimum distance.

Usage: python3 scripts/make_classrooms.py [output_dir]
"""

import itertools
import json
import random
import sys
from pathlib import Path

CLASSROOMS = [
    {
        "file": "classroom1.json",
        "name": "Classroom I",
        "rows": [4, 4, 5, 6, 4, 6, 4],
        "students": 33,
        "edges": 32,
        "in_conflict": 18,
        "front": [5, 6, 8, 10, 15, 16, 19, 20, 29],
        "back": [21, 23],
        "seed": 101,
    },
    {
        "file": "classroom2.json",
        "name": "Classroom II",
        "rows": [4, 4, 5, 5, 5, 5, 4],
        "students": 32,
        "edges": 88,
        "in_conflict": 28,
        "front": [1, 4, 6, 18, 19, 23, 25, 31],
        "back": [5, 10, 13, 22, 26, 27, 28, 29],
        "seed": 202,
    },
    {
        "file": "classroom3.json",
        "name": "Classroom III",
        "rows": [5, 5, 5, 5, 5, 6],
        "students": 31,
        "edges": 53,
        "in_conflict": 19,
        "front": [2, 4, 7, 21],
        "back": [3, 27],
        "seed": 303,
    },
]

D_MIN = 2


def seats_of(rows):
    return [(r + 1, p + 1) for r, size in enumerate(rows) for p in range(size)]


def planted_seating(room, rng):
    rows = room["rows"]
    seats = seats_of(rows)
    front = [s for s in seats if s[1] <= 2]
    back = [s for s in seats if s[1] >= rows[s[0] - 1] - 1]
    rng.shuffle(front)
    rng.shuffle(back)
    seating = {}
    taken = set()
    for student in room["front"]:
        seat = next(s for s in front if s not in taken)
        seating[student] = seat
        taken.add(seat)
    for student in room["back"]:
        seat = next(s for s in back if s not in taken)
        seating[student] = seat
        taken.add(seat)
    rest = [s for s in seats if s not in taken]
    rng.shuffle(rest)
    others = [i for i in range(1, room["students"] + 1) if i not in seating]
    for student, seat in zip(others, rest):
        seating[student] = seat
    return seating


def compatible(a, b):
    if a[0] == b[0]:
        return abs(a[1] - b[1]) >= D_MIN
    return abs(a[0] - b[0]) >= 2


def planted_instance(room):
    rng = random.Random(room["seed"])
    seating = planted_seating(room, rng)
    students = list(range(1, room["students"] + 1))
    for _ in range(100000):
        members = sorted(rng.sample(students, room["in_conflict"]))
        pairs = [
            (i, j)
            for i, j in itertools.combinations(members, 2)
            if compatible(seating[i], seating[j])
        ]
        if len(pairs) < room["edges"]:
            continue
        edges = sorted(rng.sample(pairs, room["edges"]))
        touched = {v for e in edges for v in e}
        if touched == set(members):
            return edges, seating
    raise RuntimeError("could not plant " + room["name"])


def teachers_seating(room, edges, rng, active_target=12, ok_target=4):
    """Requirement-respecting seating with a fixed active-edge profile."""
    seating = planted_seating(room, rng)
    students = list(seating)

    def profile(s):
        active = ok = 0
        for i, j in edges:
            a, b = s[i], s[j]
            if abs(a[0] - b[0]) == 1:
                active += 1
                ok += abs(a[1] - b[1]) >= D_MIN
        return active, ok

    def cost(s):
        active, ok = profile(s)
        return abs(active - active_target) + abs(ok - ok_target)

    current = cost(seating)
    neutral = [s for s in students if s not in room["front"] + room["back"]]
    while current:
        a, b = rng.sample(neutral, 2)
        seating[a], seating[b] = seating[b], seating[a]
        trial = cost(seating)
        if trial <= current:
            current = trial
        else:
            seating[a], seating[b] = seating[b], seating[a]
    return seating


def dump(obj):
    lines = ["  %s: %s" % (json.dumps(k), json.dumps(v)) for k, v in obj.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    out.mkdir(parents=True, exist_ok=True)
    for room in CLASSROOMS:
        edges, _ = planted_instance(room)
        instance = {
            "name": room["name"],
            "rows": room["rows"],
            "students": room["students"],
            "conflicts": [list(e) for e in edges],
            "front": room["front"],
            "back": room["back"],
            "d_min": D_MIN,
            "d_min_same_row": D_MIN,
            "psi": max(room["rows"]),
        }
        (out / room["file"]).write_text(dump(instance))
        if room["file"] == "classroom1.json":
            rng = random.Random(room["seed"] + 1)
            seating = teachers_seating(room, edges, rng)
            seats = {str(k): list(v) for k, v in sorted(seating.items())}
            (out / "classroom1_teachers.json").write_text(
                dump({"seats": seats}))


if __name__ == "__main__":
    main()
