#!/usr/bin/env python3
"""Independent recount over data/fixture/corpus.jsonl.

Reads the fixture line by line and writes data/fixture/manifest.json with the
corpus statistics the loader is expected to reproduce. Kept deliberately
separate from the generator so the numbers come from the file, not the plan.
"""

import json
import os

BASE = os.path.join(os.path.dirname(__file__), "..", "data", "fixture")

discussions = {}
users = set()
participation = {}
n_posts = 0

with open(os.path.join(BASE, "corpus.jsonl")) as f:
    for line in f:
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        n_posts += 1
        discussions.setdefault(rec["discussion_id"], 0)
        discussions[rec["discussion_id"]] += 1
        users.add(rec["user_id"])
        key = (rec["user_id"], rec["discussion_id"])
        participation[key] = participation.get(key, 0) + 1

per_user = {}
for (user, disc), count in participation.items():
    per_user.setdefault(user, set()).add(disc)

mean_participation = sum(len(d) for d in per_user.values()) / len(users)
max_participation = max(len(d) for d in per_user.values())

# Raw token recount for a handful of sentinel words. These are either fixed
# points of the stemmer or (for "movie") the only surface form of their stem
# in this corpus, so the counts can be checked against the built vocabulary.
SENTINELS = ["movie", "flick", "film", "tune", "soccer", "football", "guitar"]
STEM_OF = {"movie": "movi", "football": "footbal"}

token_counts = {w: 0 for w in SENTINELS}
with open(os.path.join(BASE, "corpus.jsonl")) as f:
    for line in f:
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        word = []
        for ch in rec["text"].lower() + " ":
            if ch.isalpha():
                word.append(ch)
            else:
                token = "".join(word)
                word = []
                if token in token_counts:
                    token_counts[token] += 1

manifest = {
    "n_discussions": len(discussions),
    "n_posts": n_posts,
    "n_users": len(users),
    "mean_participation": mean_participation,
    "max_participation": max_participation,
    "posts_per_discussion": dict(sorted(discussions.items())),
    "participation": {f"{u}|{d}": c for (u, d), c in sorted(participation.items())},
    "token_counts": token_counts,
    "stem_of": STEM_OF,
}

out = os.path.join(BASE, "manifest.json")
with open(out, "w") as f:
    json.dump(manifest, f, indent=2, sort_keys=True)
    f.write("\n")

print(f"wrote {out}")
