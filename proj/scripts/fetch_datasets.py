"""Rebuild data/hitters.csv and check data/eurojobs.csv.

hitters.csv comes from the ISLR Hitters table in the `rdatasets` package
(the StatLib baseball.data with salaries; rows without a salary dropped,
League/Division/NewLeague and the 1987 count columns removed).

Sources for the originals:
  http://lib.stat.cmu.edu/datasets/baseball.data
  https://dasl.datadescription.com/datafile/european-jobs/

eurojobs.csv is the 1979 Euromonitor employment table (percent of the work
force by sector for 26 European countries); rows must sum to about 100.
"""

import csv
import pathlib
import sys

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

HITTERS_COLS = ["AtBat", "Hits", "HmRun", "Runs", "RBI", "Walks", "Years",
                "CAtBat", "CHits", "CHmRun", "CRuns", "CRBI", "CWalks",
                "PutOuts", "Assists", "Errors", "Salary"]


def fetch_hitters():
    from rdatasets import data  # pip install rdatasets

    df = data("ISLR", "Hitters").dropna(subset=["Salary"])
    df = df.rename(columns={"rownames": "Name"})
    df["Name"] = df["Name"].str.lstrip("-")
    df[["Name"] + HITTERS_COLS].to_csv(DATA / "hitters.csv", index=False)
    print(f"hitters.csv: {len(df)} rows")


def check_eurojobs():
    with open(DATA / "eurojobs.csv", newline="") as f:
        rows = list(csv.DictReader(f))
    bad = [r["country"] for r in rows
           if abs(sum(float(v) for k, v in r.items() if k != "country") - 100) > 0.5]
    print(f"eurojobs.csv: {len(rows)} rows, {len(bad)} off-total rows {bad}")
    return not bad and len(rows) == 26


if __name__ == "__main__":
    if "--hitters" in sys.argv:
        fetch_hitters()
    sys.exit(0 if check_eurojobs() else 1)
