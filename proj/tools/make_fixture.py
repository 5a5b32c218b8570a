#!/usr/bin/env python3
"""Regenerate the bundled test fixture: catalog, mention corpus and market files."""

import argparse
import datetime as dt
import json
import math
import pathlib
import random

ENTITIES = [
    ("APC", "Anadarko Petroleum", "Energy"),
    ("BHI", "Baker Hughes", "Energy"),
    ("HAL", "Halliburton", "Energy"),
    ("SLB", "Schlumberger", "Energy"),
    ("XOM", "Exxon Mobil", "Energy"),
    ("CVX", "Chevron", "Energy"),
]

WINDOW_START = dt.date(2014, 3, 3)
WINDOW_DAYS = 40
MARKET_START = dt.date(2014, 1, 2)
MARKET_END = dt.date(2014, 4, 18)

PHRASES = [
    "watching {t} into the close",
    "{t} looks heavy today",
    "long {t}, short the rest",
    "{t} earnings chatter picking up",
    "who else is adding {t}?",
    "{t} breaking out",
    "rotation out of {t}",
]


def write_catalog(out):
    with open(out / "catalog.csv", "w", newline="\n") as f:
        f.write("symbol,name,industry\n")
        for sym, name, ind in ENTITIES:
            f.write(f"{sym},{name},{ind}\n")


def write_corpus(out, rng, count):
    symbols = [e[0] for e in ENTITIES]
    # Slow per-entity popularity cycles so the daily series correlate.
    phase = {s: rng.uniform(0, 2 * math.pi) for s in symbols}
    lines = []
    for i in range(count):
        day = rng.randrange(WINDOW_DAYS)
        weights = [1.2 + math.sin(day / 6.0 + phase[s]) for s in symbols]
        first = rng.choices(symbols, weights=weights)[0]
        tags = {first}
        if rng.random() < 0.35:
            tags.add(rng.choice(symbols))
        text = rng.choice(PHRASES).format(t=" ".join("$" + t for t in sorted(tags)))
        retweet = rng.random() < 0.3
        if retweet:
            text = "RT @desk: " + text
        ts = dt.datetime.combine(WINDOW_START + dt.timedelta(days=day), dt.time()) + \
            dt.timedelta(seconds=rng.randrange(86400))
        lines.append(json.dumps({
            "id": f"{500000 + i}",
            "created_at": ts.strftime("%Y-%m-%dT%H:%M:%SZ"),
            "text": text,
            "retweeted": retweet,
        }))
    lines.insert(17, '{"id": "broken", "created_at": ')
    lines.insert(60, json.dumps({"id": "nomention", "created_at": "2014-03-10T12:00:00Z",
                                 "text": "quiet day in oil", "retweeted": False}))
    with open(out / "corpus.jsonl", "w", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def write_market(out, rng):
    market = out / "market"
    market.mkdir(exist_ok=True)
    days = []
    d = MARKET_START
    while d <= MARKET_END:
        if d.weekday() < 5:
            days.append(d)
        d += dt.timedelta(days=1)
    sector = [rng.gauss(0, 0.012) for _ in days]
    for sym, _, _ in ENTITIES:
        price = rng.uniform(40, 110)
        beta = rng.uniform(0.5, 1.5)
        base_volume = rng.uniform(2e6, 9e6)
        with open(market / f"{sym}.csv", "w", newline="\n") as f:
            f.write("date,close,volume\n")
            for k, day in enumerate(days):
                if k > 0:
                    price *= math.exp(beta * sector[k] + rng.gauss(0, 0.01))
                volume = base_volume * (1 + 4 * abs(sector[k])) * rng.uniform(0.7, 1.3)
                f.write(f"{day.isoformat()},{price:.2f},{int(volume)}\n")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("out", type=pathlib.Path)
    p.add_argument("--seed", type=int, default=2014)
    p.add_argument("--records", type=int, default=420)
    args = p.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    write_catalog(args.out)
    write_corpus(args.out, rng, args.records)
    write_market(args.out, rng)


if __name__ == "__main__":
    main()
