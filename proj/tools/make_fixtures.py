# Copyright 2026 The opinion-rank Authors
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

"""Regenerates the bundled fixtures under data/. Output is deterministic.

Relevance grades come from the designed entity profiles below, never from
system output.
"""
import random
import os

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")

# ---------------------------------------------------------------- annotations
def conll(sentences):
    out = []
    for toks in sentences:
        for w, l in toks:
            out.append(f"{w}\t{l}")
        out.append("")
    return "\n".join(out)


def aspect_tokens(aspect):
    ws = aspect.split()
    return [(w, "B-ASPECT" if i == 0 else "I-ASPECT") for i, w in enumerate(ws)]


def O(text):
    return [(w, "O") for w in text.split()]


def annotations(aspects, pos_adj, neg_adj, advs, fillers, entity_word, n, seed):
    rng = random.Random(seed)
    adjs = pos_adj + neg_adj
    out = []
    templates = [
        lambda a, b, j, k, v: O("the") + aspect_tokens(a) + O(f"is {j}"),
        lambda a, b, j, k, v: O(j) + aspect_tokens(a),
        lambda a, b, j, k, v: aspect_tokens(a) + O(f"is {v} {j}"),
        lambda a, b, j, k, v: O(j) + aspect_tokens(a) + O(f"and {k}") + aspect_tokens(b),
        lambda a, b, j, k, v: O("the") + aspect_tokens(a) + O(f"is not {j}"),
        lambda a, b, j, k, v: O("i love the") + aspect_tokens(a),
        lambda a, b, j, k, v: O("the") + aspect_tokens(a) + O(f"is {j} but the") + aspect_tokens(b) + O(f"is {k}"),
        lambda a, b, j, k, v: O(f"this {entity_word} has a {v} {j}") + aspect_tokens(a),
        lambda a, b, j, k, v: O("i think the") + aspect_tokens(a) + O(f"is {j}"),
        lambda a, b, j, k, v: aspect_tokens(a) + O(f"is {j} and") + aspect_tokens(b) + O(f"is {k}"),
        lambda a, b, j, k, v: O(f"{v} {j}") + aspect_tokens(a) + O(f"and {k}") + aspect_tokens(b),
    ]
    for i in range(n):
        if i % 9 == 8:
            out.append(O(rng.choice(fillers)))
            continue
        a, b = rng.sample(aspects, 2)
        j, k = rng.choice(adjs), rng.choice(adjs)
        v = rng.choice(advs)
        out.append(templates[i % len(templates)](a, b, j, k, v))
    return out


# ---------------------------------------------------------------- corpus
FILLERS_LAPTOP = [
    "I bought this laptop last month.",
    "Shipping took two weeks.",
    "I use it for work and school.",
    "My old machine finally died.",
    "It came with the usual software.",
]
FILLERS_HOTEL = [
    "We stayed three nights in June.",
    "Check in took a few minutes.",
    "We came for a wedding.",
    "The hotel is near the station.",
    "We booked through the website.",
]


def sentence(aspect, phrase, rng):
    templates = [
        "The {a} is {p}.",
        "{P} {a}.",
        "I think the {a} is {p}.",
        "Honestly the {a} is {p}.",
    ]
    words = phrase.split()
    # "not X" cannot sit before the noun naturally
    if words[0] == "not":
        templates = ["The {a} is {p}.", "I think the {a} is {p}."]
    t = rng.choice(templates)
    return t.format(a=aspect, p=phrase, P=phrase[0].upper() + phrase[1:])


def reviews_for(entity, plan, rng, fillers, n_reviews):
    """plan: list of (aspect, [phrases]); each review draws a few aspects."""
    mentions = []
    for aspect, phrases in plan:
        for p in phrases:
            mentions.append((aspect, p))
    rng.shuffle(mentions)
    reviews = [[] for _ in range(n_reviews)]
    for i, m in enumerate(mentions):
        reviews[i % n_reviews].append(sentence(m[0], m[1], rng))
    out = []
    for i, sents in enumerate(reviews):
        if rng.random() < 0.6:
            sents.insert(rng.randrange(len(sents) + 1), rng.choice(fillers))
        out.append((entity, f"r{i + 1}", " ".join(sents)))
    return out


LAPTOP = {
    # planted best for the headline query
    "aurora-14": [("battery life", ["good", "good", "pretty good"]), ("display", ["clear", "clear", "sharp"]),
                  ("keyboard", ["nice"]), ("webcam", ["decent"]), ("fan", ["quiet"]), ("speakers", ["nice"]),
                  ("trackpad", ["responsive"])],
    # distractor: says battery, life, display, good and clear a lot, all negative
    "vector-15": [("battery life", ["not good", "not good", "not good", "not good", "poor", "terrible"]),
                  ("display", ["not clear", "not clear", "not clear", "not clear", "blurry"])],
    "nimbus-13": [("battery life", ["excellent", "amazing"]), ("display", ["dim", "dull"]),
                  ("price", ["expensive"])],
    "quartz-16": [("display", ["gorgeous", "vivid", "clear"]), ("battery life", ["short", "poor"]),
                  ("speakers", ["great"])],
    "falcon-17": [("performance", ["fast", "really fast", "impressive"]), ("fan", ["loud", "noisy"]),
                  ("price", ["expensive"])],
    "ember-12": [("keyboard", ["comfortable", "really comfortable"]), ("trackpad", ["smooth", "responsive"]),
                 ("battery life", ["decent"])],
    "halo-14": [("build quality", ["solid", "excellent"]), ("speakers", ["weak"]), ("webcam", ["grainy"])],
    "pixel-13": [("display", ["crisp", "bright"]), ("keyboard", ["flimsy"]), ("price", ["affordable", "affordable"])],
    "orbit-15": [("performance", ["sluggish", "slow"]), ("battery life", ["good"]), ("display", ["dull"])],
    "summit-14": [("price", ["overpriced"]), ("build quality", ["flimsy"]), ("speakers", ["loud"])],
    "tempo-13": [("webcam", ["sharp"]), ("fan", ["quiet", "quiet"]), ("performance", ["fast"])],
    "lumen-15": [("battery life", ["mediocre"]), ("display", ["bright", "vivid"]), ("keyboard", ["good"])],
}
LAPTOP_QUERIES = [
    ("q1", "good battery life and clear display"),
    ("q2", "fast performance and quiet fan"),
    ("q3", "comfortable keyboard"),
    ("q4", "vivid display"),
    ("q5", "solid build quality"),
    ("q6", "affordable price"),
    ("q7", "smooth trackpad"),
    ("q8", "good battery life"),
]

HOTEL = {
    "harbor-inn": [("room", ["clean", "spacious"]), ("staff", ["friendly", "helpful"]), ("breakfast", ["good"])],
    "grand-plaza": [("location", ["perfect", "great"]), ("room", ["cramped", "noisy"]), ("price", ["expensive"])],
    "maple-lodge": [("breakfast", ["excellent", "fantastic"]), ("bed", ["comfortable"]), ("wifi", ["slow"])],
    "city-central": [("wifi", ["fast", "reliable"]), ("room", ["dirty"]), ("staff", ["rude"])],
    "seaside-resort": [("pool", ["lovely", "clean"]), ("view", ["gorgeous", "beautiful"]), ("food", ["mediocre"])],
    "budget-stay": [("price", ["affordable", "affordable"]), ("room", ["not clean", "not clean", "dirty"]),
                    ("staff", ["not friendly", "unhelpful"]), ("bathroom", ["smelly"])],
    "park-hotel": [("parking", ["easy", "convenient"]), ("staff", ["friendly"]), ("bed", ["uncomfortable"])],
    "riverside": [("view", ["beautiful"]), ("room", ["clean", "quiet"]), ("breakfast", ["poor"])],
    "old-mill": [("bathroom", ["spotless"]), ("bed", ["comfortable", "really comfortable"]), ("location", ["good"])],
    "skyline": [("service", ["outstanding", "excellent"]), ("room", ["spacious"]), ("price", ["overpriced"])],
}
HOTEL_QUERIES = [
    ("h1", "clean room and friendly staff"),
    ("h2", "good breakfast"),
    ("h3", "fast wifi"),
    ("h4", "beautiful view"),
    ("h5", "comfortable bed"),
    ("h6", "spacious room"),
]

NEGATIVE = {"not", "poor", "terrible", "short", "dim", "blurry", "loud", "dull", "noisy", "weak", "grainy",
            "flimsy", "sluggish", "slow", "overpriced", "mediocre", "expensive", "cramped", "dirty", "rude",
            "smelly", "uncomfortable", "unhelpful"}


def intended_orientation(phrases):
    pos = sum(1 for p in phrases if not (set(p.split()) & NEGATIVE))
    neg = len(phrases) - pos
    return "pos" if pos > neg else "neg" if neg > pos else "neu"


def qrels_for(entities, queries):
    """Graded by design intent: 2 when every query aspect is praised, 1 when some are."""
    lines = []
    for qid, text in queries:
        words = text.split()
        for eid, plan in sorted(entities.items()):
            d = dict(plan)
            targets = [a for a in {a for a, _ in sum(entities.values(), [])} if all(w in words for w in a.split())]
            praised = [a for a in targets if a in d and intended_orientation(d[a]) == "pos"]
            if not targets or not praised:
                continue
            grade = 2 if len(praised) == len(targets) else 1
            lines.append(f"{qid}\t{eid}\t{grade}")
    return "\n".join(lines) + "\n"


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        f.write(text)


def build(domain, entities, queries, fillers, aspects, pos_adj, neg_adj, advs, entity_word, seed):
    rng = random.Random(seed)
    rows = []
    for eid, plan in entities.items():
        n = max(2, sum(len(p) for _, p in plan) // 2)
        rows += reviews_for(eid, plan, rng, fillers, n)
    write(f"{ROOT}/{domain}/corpus.tsv", "".join(f"{e}\t{r}\t{t}\n" for e, r, t in rows))
    write(f"{ROOT}/{domain}/queries.tsv", "".join(f"{q}\t{t}\n" for q, t in queries))
    write(f"{ROOT}/{domain}/qrels.tsv", qrels_for(entities, queries))
    ann = annotations(aspects, pos_adj, neg_adj, advs, [f.rstrip(".").lower() for f in fillers], entity_word, 240,
                      seed + 1)
    write(f"{ROOT}/{domain}/annotations.conll", conll(ann))


build("laptop", LAPTOP, LAPTOP_QUERIES, FILLERS_LAPTOP,
      ["battery life", "display", "keyboard", "trackpad", "performance", "price", "build quality", "speakers",
       "webcam", "fan", "battery", "screen", "ports", "storage"],
      ["good", "clear", "sharp", "great", "excellent", "fast", "smooth", "comfortable", "solid", "vivid", "nice",
       "bright", "affordable", "quiet", "decent", "crisp", "gorgeous", "amazing"],
      ["poor", "dim", "slow", "loud", "flimsy", "short", "terrible", "weak", "blurry", "dull", "expensive",
       "grainy", "sluggish", "mediocre", "overpriced", "noisy"],
      ["very", "really", "extremely", "pretty", "quite", "incredibly", "fairly", "somewhat"], "laptop", 11)

build("hotel", HOTEL, HOTEL_QUERIES, FILLERS_HOTEL,
      ["room", "staff", "breakfast", "location", "wifi", "pool", "view", "bed", "parking", "bathroom", "service",
       "price", "food"],
      ["clean", "friendly", "helpful", "good", "great", "excellent", "spacious", "comfortable", "quiet", "lovely",
       "beautiful", "perfect", "fast", "reliable", "spotless", "outstanding", "affordable", "fantastic"],
      ["dirty", "rude", "noisy", "cramped", "slow", "poor", "smelly", "uncomfortable", "unhelpful", "expensive",
       "terrible", "mediocre", "overpriced", "awful"],
      ["very", "really", "extremely", "pretty", "quite", "incredibly", "fairly", "somewhat"], "hotel", 23)

# toy: "battery" is the only aspect, every other token is O
toy_words = ["is", "good", "the", "bad", "i", "like", "this", "phone", "screen", "fine", "very", "case", "and"]
rng = random.Random(5)
toy = []
for i in range(24):
    n = rng.randint(2, 6)
    ws = [rng.choice(toy_words) for _ in range(n)]
    ws.insert(rng.randrange(n + 1), "battery")
    toy.append([(w, "B-ASPECT" if w == "battery" else "O") for w in ws])
write(f"{ROOT}/toy/toy.conll", conll(toy))
