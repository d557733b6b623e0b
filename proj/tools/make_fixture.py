#!/usr/bin/env python3
"""Generates the bundled synthetic conference corpus (data/fixtures/hri_fixture.csv).

The corpus is fully synthetic. Its 2010 and 2011 author/paper counts follow
the shape of a published Lotka table (111/13/1 and 155/7/2/1/1 authors with
1/2/3/... papers), one pair of articles is an author-shuffled near duplicate,
and a few authors appear under accented and unaccented spellings.

Usage: make_fixture.py OUTPUT.csv
"""
import csv
import random
import sys

GIVEN = """Aiko Akira Ana Andre Anna Ben Bora Carla Chen Chloe Daniel David Dong Elena Emma
Eun Felix Fang Gabriel Hana Hannah Hao Hyun Ian Isabel Jae Jan Jia Jin Jonas Julia Kai Kenji
Klaus Lea Lena Li Lin Lucas Luis Maja Marie Mark Mei Min Mina Nadia Noah Olivia Omar Paul Ping
Rafael Rina Ryo Sara Seo Sofia Su Takumi Tao Thomas Tim Wei Xin Yan Yuki Yusuf Zoe Emre Elif
Liam Chloe Ayla Can Deniz Hsin Yu Ting Chia""".split()
SURNAMES = """Abe Arslan Bauer Becker Brown Chang Chen Cho Choi Davis Dubois Fischer Fujita
Garcia Hoffmann Huang Ito Jung Kang Kato Kim Klein Koch Kaya Lambert Lee Leroy Li Lin Liu Martin
Meyer Miller Moreau Muller Nakamura Park Petit Richter Roux Sato Schmidt Schulz Smith Suzuki
Tanaka Taylor Wagner Wang Watanabe Weber Wilson Wu Xu Yamamoto Yang Yilmaz Yoon Zhang Zhao Zhou
Tsai Huang Wu Chou Demir Celik Sahin Campbell Tremblay Roy Gagnon MacDonald Nguyen Thompson""".split()

COUNTRIES = {
    "USA": ["Massachusetts Institute of Technology, Cambridge, MA, USA",
            "Stanford University, Stanford, CA, USA",
            "Carnegie Mellon University, Pittsburgh, PA, USA",
            "Oregon State University, Corvallis, OR, USA",
            "Microsoft Research, Redmond, WA, USA"],
    "China": ["Tsinghua University, Beijing, China",
              "Zhejiang University, Hangzhou, China",
              "Shanghai Jiao Tong University, Shanghai, China"],
    "Japan": ["The University of Tokyo, Tokyo, Japan",
              "Osaka University, Osaka, Japan",
              "ATR, Kyoto, Japan"],
    "Germany": ["Technische Universität Darmstadt, Darmstadt, Germany",
                "University of Hamburg, Hamburg, Germany",
                "Bielefeld University, Bielefeld, Germany"],
    "South Korea": ["KAIST, Daejeon, South Korea",
                    "Seoul National University, Seoul, South Korea"],
    "Australia": ["Monash University, Melbourne, Australia"],
    "Canada": ["University of Waterloo, Waterloo, Canada"],
    "France": ["Sorbonne Université, Paris, France"],
    "Taiwan": ["National Taiwan University, Taipei, Taiwan"],
    "Turkey": ["Koç University, Istanbul, Turkey"],
    "United Kingdom": ["University of Glasgow, Glasgow, United Kingdom"],
    "Italy": ["University of Modena and Reggio Emilia, Reggio Emilia, Italy"],
}
COUNTRY_WEIGHTS = {"USA": 30, "China": 14, "Japan": 12, "Germany": 10, "South Korea": 8,
                   "Australia": 4, "Canada": 5, "France": 4, "Taiwan": 3, "Turkey": 2,
                   "United Kingdom": 5, "Italy": 3}

THEMES = {
    "USA": "trust teleoperation autonomy assistance collaboration learning manipulation",
    "China": "companion children elderly emotion recognition pet care sleep",
    "Japan": "android conversation gaze presence social guide shopping",
    "Germany": "imitation learning gesture industrial cobot safety handover",
    "South Korea": "education tutor classroom expression telepresence language",
    "Australia": "field agriculture swarm navigation",
    "Canada": "haptics gaming rehabilitation exoskeleton",
    "France": "cognitive workload neuroergonomics attention",
    "Taiwan": "storytelling museum guide",
    "Turkey": "sign language avatar",
    "United Kingdom": "ethics accountability explanation",
    "Italy": "shared control mobile manipulator",
}
COMMON = "robot human interaction study user participants design behavior evaluation".split()
TEMPLATES = [
    "We present a {a} {b} system for {c} {d}.",
    "This paper studies how {a} affects {b} during {c} {d}.",
    "Results show that {a} improves {b} and {c}.",
    "We conducted a study with {n} participants on {a} {b}.",
    "Our {a} approach supports {b} in {c} settings.",
    "Findings suggest design implications for {a} {b}.",
]


def sentence(rng, theme):
    words = theme + COMMON
    fill = {k: rng.choice(words) for k in "abcd"}
    fill["n"] = rng.randint(8, 60)
    return rng.choice(TEMPLATES).format(**fill)


def make_abstract(rng, country):
    theme = THEMES[country].split()
    return " ".join(sentence(rng, theme) for _ in range(rng.randint(2, 4)))


def make_title(rng, country):
    theme = THEMES[country].split()
    words = rng.sample(theme, min(2, len(theme))) + rng.sample(COMMON, 2)
    return " ".join(w.capitalize() for w in words)


class People:
    def __init__(self, rng):
        self.rng = rng
        self.used = set()

    def new(self):
        while True:
            given, surname = self.rng.choice(GIVEN), self.rng.choice(SURNAMES)
            if (given, surname) not in self.used:
                self.used.add((given, surname))
                break
        country = self.rng.choices(list(COUNTRY_WEIGHTS), weights=COUNTRY_WEIGHTS.values())[0]
        return {"given": given, "surname": surname, "country": country,
                "affiliation": self.rng.choice(COUNTRIES[country])}


def pack(rng, slots):
    """Splits author slots into articles of 2-4 distinct authors."""
    articles = []
    pool = list(slots)
    rng.shuffle(pool)
    while pool:
        size = min(len(pool), rng.randint(2, 4))
        chosen = []
        for person in list(pool):
            if all(person is not c for c in chosen):
                chosen.append(person)
                pool.remove(person)
            if len(chosen) == size:
                break
        articles.append(chosen)
    return articles


def main(path):
    rng = random.Random(2024)
    people = People(rng)
    articles = []

    def add(year, authors, title=None, abstract=None):
        lead = authors[0]["country"]
        articles.append({
            "article_id": f"HRI-{year}-{sum(1 for a in articles if a['year'] == year) + 1:03d}",
            "year": year,
            "title": title or make_title(rng, lead),
            "abstract": make_abstract(rng, lead) if abstract is None else abstract,
            "authors": authors,
        })

    # Years with a fixed author-productivity profile: {papers: authors}.
    profiles = {2010: {1: 111, 2: 13, 3: 1}, 2011: {1: 155, 2: 7, 3: 2, 4: 1, 5: 1}}
    veterans = []
    for year, profile in profiles.items():
        slots = []
        for papers, count in profile.items():
            for _ in range(count):
                person = people.new()
                veterans.append(person)
                slots += [person] * papers
        for group in pack(rng, slots):
            add(year, group)

    # Later years draw from returning authors and newcomers.
    regulars = rng.sample(veterans, 40)
    for year in range(2012, 2025):
        for _ in range(rng.randint(14, 22)):
            size = rng.randint(2, 4)
            authors = []
            while len(authors) < size:
                person = rng.choice(regulars) if rng.random() < 0.45 else people.new()
                if rng.random() < 0.15:
                    regulars.append(person)
                if all(person is not a for a in authors):
                    authors.append(person)
            add(year, authors)

    # Accent variants of the same people in later years.
    jose = {"given": "José A.", "surname": "García-López", "country": "France",
            "affiliation": "Sorbonne Université, Paris, France"}
    jose_plain = dict(jose, given="Jose", surname="Garcia-Lopez",
                      affiliation="Sorbonne Universite, Paris, France")
    raph = {"given": "Raphaëlle", "surname": "Roy", "country": "France",
            "affiliation": "Fédération ENAC ISAE-SUPAERO ONERA, Université de Toulouse, Toulouse, France"}
    raph_plain = dict(raph, given="Raphaelle")
    add(2016, [jose, raph])
    add(2019, [jose_plain, people.new()])
    add(2021, [raph_plain, jose])

    # One planted near-duplicate: same authors, shuffled order, reworded title.
    trio = [{"given": g, "surname": s, "country": "China",
             "affiliation": "Zhejiang University, Hangzhou, China"}
            for g, s in [("Mei", "Lv"), ("Jirui", "Zhou"), ("Hao", "Ma")]]
    add(2023, trio,
        title="Sleep Elf: A Pillow Robot That Accompanies Children To Sleep",
        abstract="Many children struggle to fall asleep alone at night. We designed Sleep Elf, "
                 "a pillow robot that pats the child and sings lullabies. A pilot study with "
                 "twelve families suggests the pillow robot helps children fall asleep sooner.")
    add(2023, [trio[2], trio[0], trio[1]],
        title="Sleep Elf: A Pillow Robot That Pats And Sings Children To Sleep",
        abstract="Many children struggle to fall asleep alone at night. We present Sleep Elf, "
                 "a pillow robot that pats the child and sings lullabies. A pilot study with "
                 "twelve families suggests that the pillow robot helps children fall asleep sooner.")

    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["article_id", "conference", "year", "title", "abstract",
                    "author_given", "author_surname", "affiliation", "country"])
        for a in articles:
            for person in a["authors"]:
                w.writerow([a["article_id"], "HRI", a["year"], a["title"], a["abstract"],
                            person["given"], person["surname"], person["affiliation"],
                            person["country"]])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/fixtures/hri_fixture.csv")
