#!/usr/bin/env python3
"""Writes the Monthey district fixtures under data/monthey/.

Only per-candidate totals were published for this district, so the ballots
are synthetic: votes are dealt round-robin over 331 ballots, which gives the
published totals, 1,931 votes and 5-6 selections per ballot. Candidates AA
and AB are the two lowest-ranked candidates left out of the results table;
their categories follow from the per-category candidate counts and their
votes from the 1,931 total.
"""

import json
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "monthey"

# id, gender, age, region, votes
CANDIDATES = [
    ("A", "Male", "31-65", "Region 1", 166),
    ("B", "Female", "31-65", "Region 1", 128),
    ("C", "Female", "31-65", "Region 2", 121),
    ("D", "Male", "18-30", "Region 1", 114),
    ("E", "Female", "31-65", "Region 1", 111),
    ("F", "Female", "18-30", "Region 3", 92),
    ("G", "Female", "31-65", "Region 2", 90),
    ("H", "Male", "31-65", "Region 4", 89),
    ("I", "Male", "+65", "Region 4", 75),
    ("J", "Female", "31-65", "Region 1", 73),
    ("K", "Female", "18-30", "Region 2", 73),
    ("L", "Female", "18-30", "Region 2", 70),
    ("M", "Male", "+65", "Region 1", 70),
    ("N", "Male", "31-65", "Region 1", 64),
    ("O", "Male", "31-65", "Region 1", 58),
    ("P", "Female", "18-30", "Region 1", 57),
    ("Q", "Female", "31-65", "Region 2", 56),
    ("R", "Male", "18-30", "Region 1", 56),
    ("S", "Male", "31-65", "Region 3", 49),
    ("T", "Male", "+65", "Region 1", 47),
    ("U", "Male", "31-65", "Region 1", 45),
    ("V", "Male", "31-65", "Region 1", 45),
    ("W", "Female", "31-65", "Region 3", 45),
    ("X", "Male", "18-30", "Region 3", 42),
    ("Y", "Female", "18-30", "Region 2", 29),
    ("Z", "Male", "+65", "Region 1", 27),
    ("AA", "Male", "31-65", "Region 2", 20),
    ("AB", "Male", "31-65", "Region 4", 19),
]
BALLOTS = 331
SEATS = 17

REGION = {"attribute": "region", "preference_rank": 3, "categories": [
    {"category": "Region 1", "bound": {"kind": "AT_LEAST", "n": 5}},
    {"category": "Region 2", "bound": {"kind": "AT_LEAST", "n": 4}},
    {"category": "Region 3", "bound": {"kind": "AT_LEAST", "n": 3}},
    {"category": "Region 4", "bound": {"kind": "AT_LEAST", "n": 2}},
]}
GENDER = {"attribute": "gender", "preference_rank": 1, "categories": [
    {"category": "Male", "bound": {"kind": "EXACT", "n": 8}},
    {"category": "Female", "bound": {"kind": "EXACT", "n": 9}},
]}
AGE = {"attribute": "age", "preference_rank": 2, "categories": [
    {"category": "18-30", "bound": {"kind": "AT_LEAST", "n": 4}},
    {"category": "31-65", "bound": {"kind": "AT_LEAST", "n": 7}},
    {"category": "+65", "bound": {"kind": "AT_LEAST", "n": 4}},
]}

# Phase 1 (yes, no, blank) out of 347 participants.
PHASE1 = {"gender": (260, 68, 19), "age": (267, 61, 19), "region": (243, 75, 29)}


def roster():
    return [{"candidate_id": cid, "display_name": f"Candidate {cid}",
             "attributes": {"age": age, "gender": gender, "region": region}}
            for cid, gender, age, region, _ in CANDIDATES]


def write_json(name, doc):
    (OUT / name).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    base = {"election_id": "monthey", "seats": SEATS, "max_selections": SEATS, "roster": roster(),
            "criteria": [], "tie_policy": "REPORT_ALL", "relaxation_policy": "FAIL"}
    write_json("base.json", base)
    write_json("config.json", dict(base, criteria=[REGION, GENDER, AGE]))

    lines = ["candidate_id,display_name,gender,age,region"]
    lines += [f"{cid},Candidate {cid},{g},{a},{r}" for cid, g, a, r, _ in CANDIDATES]
    (OUT / "candidates.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    selections = [[] for _ in range(BALLOTS)]
    slot = 0
    for cid, *_, votes in CANDIDATES:
        for _ in range(votes):
            selections[slot % BALLOTS].append(cid)
            slot += 1
    rows = ["ballot_id,selections,receipt"]
    rows += [f"MO-{i + 1:04d},{'|'.join(sorted(sel))}," for i, sel in enumerate(selections)]
    (OUT / "ballots_raw.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")

    questions = [
        {"question_id": "gender", "text": "Gender: at most one seat difference between men and women",
         "criterion": GENDER},
        {"question_id": "age", "text": "Age: reserved seats for 18-30, 31-65 and +65", "criterion": AGE},
        {"question_id": "region", "text": "Region: reserved seats per region", "criterion": REGION},
    ]
    write_json("questions.json", {"questions": questions})

    rng = random.Random(2019)
    participants = 347
    rows = ["ballot_id,question_id,answer"]
    answers = {}
    for qid, (yes, no, blank) in PHASE1.items():
        assert yes + no + blank == participants
        pool = ["YES"] * yes + ["NO"] * no + ["BLANK"] * blank
        rng.shuffle(pool)
        answers[qid] = pool
    for i in range(participants):
        for qid in PHASE1:
            rows.append(f"P1-{i + 1:04d},{qid},{answers[qid][i]}")
    (OUT / "phase1_ballots.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
