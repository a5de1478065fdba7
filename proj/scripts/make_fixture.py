#!/usr/bin/env python3
"""Generates the bundled synthetic forum corpus at data/fixture/corpus.jsonl.

Three topic blocks (movies, music, sport). Each topic has:
  - 3 "visible" discussions where the topic's synonym-vocabulary user posts
    alongside canonical content,
  - 4 "hidden" discussions the synonym user only bumps (boilerplate posts),
  - 6 plain discussions with canonical vocabulary only.
Plus one all-boilerplate chat discussion. Filler words are drawn from the
shipped stopword/boilerplate lists so token counts stay exact.
"""

import json
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "fixture", "corpus.jsonl")

records = []


def post(disc, user, counts):
    words = []
    for word, n in counts:
        words.extend([word] * n)
    text = "the " + " and the ".join(words)
    records.append({"discussion_id": disc, "user_id": user, "text": text})


def bump(disc, user):
    records.append({"discussion_id": disc, "user_id": user, "text": "bump the thread"})


TOPICS = {
    "m": {  # movies
        "marker": "movie", "second": "film", "third": "actor", "fourth": "cinema",
        "syn": "flick", "syn_user": "syn_movie", "content": ["cine1", "cine2"],
    },
    "u": {  # music
        "marker": "song", "second": "guitar", "third": "album", "fourth": "concert",
        "syn": "tune", "syn_user": "syn_music", "content": ["band1", "band2"],
    },
    "s": {  # sport
        "marker": "football", "second": "player", "third": "team", "fourth": "stadium",
        "syn": "soccer", "syn_user": "syn_sport", "content": ["fan1", "fan2"],
    },
}

for prefix, t in TOPICS.items():
    c1, c2 = t["content"]
    # visible: canonical backbone + two synonym-user posts
    for i in (1, 2, 3):
        disc = f"{prefix}{i:02d}"
        post(disc, c1, [(t["marker"], 3), (t["second"], 2)])
        post(disc, t["syn_user"], [(t["syn"], 2)])
        post(disc, t["syn_user"], [(t["syn"], 2)])
    # plain: canonical vocabulary without the marker term
    for i in (4, 5, 6, 7, 8, 9):
        disc = f"{prefix}{i:02d}"
        post(disc, c1, [(t["second"], 3), (t["third"], 3)])
        post(disc, c2, [(t["second"], 3), (t["fourth"], 3)])
    # hidden: marker-heavy canonical content, synonym user only bumps
    for i in (1, 2, 3, 4):
        disc = f"z{prefix}{i}"
        post(disc, c1, [(t["marker"], 10)])
        post(disc, c2, [(t["marker"], 20), (t["second"], 3), (t["third"], 3)])
        bump(disc, t["syn_user"])
        bump(disc, t["syn_user"])

# casual sub-threshold posters (stay below the evaluation post floor)
post("u04", "casual1", [("guitar", 1)])
post("u05", "casual1", [("guitar", 2)])
post("s04", "casual2", [("player", 1)])
post("s05", "casual2", [("team", 1)])
post("m04", "casual2", [("film", 1)])
post("u06", "newbie", [("album", 1)])
post("m05", "newbie", [("actor", 1)])

# all-boilerplate chat discussion; its item profile is empty
records.append({"discussion_id": "c01", "user_id": "lurker1",
                "text": "the thread was a post and a quote"})
records.append({"discussion_id": "c01", "user_id": "lurker1",
                "text": "bump the thread"})
records.append({"discussion_id": "c01", "user_id": "lurker2",
                "text": "a reply to the thread"})

records.sort(key=lambda r: r["discussion_id"])

os.makedirs(os.path.dirname(OUT), exist_ok=True)
with open(OUT, "w") as f:
    for rec in records:
        f.write(json.dumps(rec, sort_keys=True) + "\n")

print(f"wrote {len(records)} posts to {OUT}")
