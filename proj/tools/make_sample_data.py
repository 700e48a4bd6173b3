#!/usr/bin/env python3
"""Regenerates the sample lexicons and fixture corpora under data/.

The lexicons are small stand-ins with the standard shapes (68 LIWC-style
categories, 10 NRC-style emotions); the corpora are synthetic Italian
tweets, seeded so the output is stable.
"""

import json
import random
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"

LIWC = [
    ("funct", "il la di che e"),
    ("pronoun", "io tu lui lei noi voi loro"),
    ("ppron", "io tu noi voi"),
    ("i", "io mi me mio*"),
    ("we", "noi ci nostr*"),
    ("you", "tu ti te tuo* voi vostr*"),
    ("shehe", "lui lei gli suo*"),
    ("they", "loro essi"),
    ("ipron", "questo quello qualcosa niente"),
    ("article", "il lo la i gli le un una"),
    ("verb", "fare dire andare vogliono fanno"),
    ("auxverb", "essere avere sono hanno"),
    ("past", "fatto detto stato"),
    ("present", "fa dice va vuole"),
    ("future", "farà dirà sarà"),
    ("adverb", "molto sempre mai ancora"),
    ("preps", "di a da in con su per tra"),
    ("conj", "e ma o perché quindi"),
    ("negate", "non no mai nessun*"),
    ("quant", "tutti molti pochi troppo"),
    ("number", "uno due tre cento mille"),
    ("swear", "cazzo merda vaffanculo stronz* schifo* coglion* bastard*"),
    ("social", "amico gente popolo parlare"),
    ("family", "madre padre figli* famiglia"),
    ("friend", "amic* compagn*"),
    ("humans", "persone uomo donna bambin*"),
    ("affect", "felice triste odio amore"),
    ("posemo", "bene bello grazie brav* ottim* speranza"),
    ("negemo", "male odio schifo* vergogna* pessim*"),
    ("anx", "paura ansia preoccup*"),
    ("anger", "rabbia odio furios* incazz* vergogna*"),
    ("sad", "triste piangere dolore"),
    ("cogmech", "pensare capire sapere credo"),
    ("insight", "capire pensiero idea"),
    ("cause", "perché causa quindi"),
    ("discrep", "dovrebbe potrebbe vorrei"),
    ("tentat", "forse magari può"),
    ("certain", "sempre certo sicuro"),
    ("inhib", "bloccare fermare vietare"),
    ("incl", "con insieme anche"),
    ("excl", "ma tranne senza"),
    ("percept", "vedere sentire guardare"),
    ("see", "vedere guardare occhi"),
    ("hear", "sentire ascoltare voce"),
    ("feel", "toccare sentire"),
    ("bio", "corpo salute mangiare"),
    ("body", "testa mani faccia"),
    ("health", "salute malattia ospedale vaccin*"),
    ("sexual", "sesso"),
    ("ingest", "mangiare bere cibo"),
    ("relativ", "qui dove prima dopo"),
    ("motion", "andare venire arrivare sbarc*"),
    ("space", "qui là sopra sotto"),
    ("time", "oggi domani ieri ora anni"),
    ("work", "lavoro lavorare tasse impres*"),
    ("achieve", "vincere successo risultat*"),
    ("leisure", "calcio vacanza"),
    ("home", "casa"),
    ("money", "soldi euro tasse pagare costi*"),
    ("relig", "dio chiesa papa"),
    ("death", "morte morire mort*"),
    ("assent", "sì ok certo"),
    ("nonflu", "ehm mah"),
    ("filler", "tipo cioè"),
    ("politics", "governo ministr* parlamento legge decreto partit* politic* premier"),
    ("law", "legge leggi decreto norma giustizia"),
    ("immigr", "immigrat* migranti clandestin* profughi sbarc*"),
    ("insult", "idiot* buffon* ladr* incapac* pagliacc* venduti vergogna*"),
]

NRC = {
    "anger": "odio rabbia ladro ladri vergogna schifo furioso",
    "anticipation": "speranza domani futuro attesa",
    "disgust": "schifo merda vergogna marcio",
    "fear": "paura pericolo minaccia invasione",
    "joy": "felice bello grazie amore festa",
    "negative": "male odio schifo vergogna ladri incapaci pessimo",
    "positive": "bene bello grazie bravo ottimo speranza",
    "sadness": "triste dolore piangere perdita",
    "surprise": "incredibile improvviso sorpresa",
    "trust": "fiducia onesto giustizia sicuro",
}

POLICY = {
    "hate": [
        "Questo governo di LADRI e incapaci ci ruba le tasse!!! {tag} vaffanculo",
        "il ministro è un buffone, che schifo questa legge {tag} #vergogna",
        "VERGOGNA!!! Il decreto è una merda, a casa tutti {tag}",
        "ma andate a lavorare stronzi, parlamento di pagliacci {tag}",
        "Premier incapace e venduto, vi odio {tag} #dimissioni",
        "che cazzo di legge è questa?! ladri {tag} #vergogna",
    ],
    "normal": [
        "Oggi in parlamento si discute la nuova legge sul lavoro {tag}",
        "Il ministro ha presentato il decreto, vedremo i risultati {tag}",
        "Domani il voto sulla riforma del fisco. Speranza per le imprese {tag}",
        "Letto il testo del decreto: alcune norme sono buone, altre meno {tag}",
        "Grazie al governo per i fondi alla sanità {tag}",
        "Intervista interessante al premier stasera {tag} #politica",
    ],
}
POLICY_TAGS = ["#governo", "#decreto", "#riforma", "#manovra", "#parlamento", "#tasse"]

IMMIGRATION = {
    "hate": [
        "Basta clandestini!!! Rimandateli a casa loro {tag} #invasione",
        "questi migranti sono una vergogna, che schifo {tag}",
        "ALTRI SBARCHI!! governo di venduti, fuori tutti {tag}",
        "profughi un cazzo, sono delinquenti {tag} #stopinvasione",
        "Ci rubano il lavoro e voi zitti, idioti {tag}",
        "odio questa invasione, merda {tag} #chiudereiporti",
    ],
    "normal": [
        "Oggi sono arrivati 200 migranti a Lampedusa, accolti dai volontari {tag}",
        "Un bel progetto di integrazione nelle scuole {tag} #accoglienza",
        "Il rapporto sui rifugiati mostra dati interessanti {tag}",
        "Domani incontro pubblico sull'accoglienza in città {tag}",
        "Grazie ai medici che aiutano i profughi {tag}",
        "La nuova norma sui permessi di soggiorno spiegata bene {tag}",
    ],
}
IMMIGRATION_TAGS = ["#migranti", "#sbarchi", "#lampedusa", "#immigrazione", "#porti", "#ong"]

SUFFIXES = ["", " oggi", " ancora", " davvero", " :(", " :)", " 😡", " 👍", " ...", " !"]


def corpus(prefix, templates, tags, n, hate_share, noise, rng, domain):
    rows = []
    for i in range(n):
        label = "hate" if rng.random() < hate_share else "normal"
        # A share of tweets is drawn from the other class's templates, so
        # the label is not a deterministic function of the text.
        style = label if rng.random() >= noise else ("normal" if label == "hate" else "hate")
        text = rng.choice(templates[style]).format(tag=rng.choice(tags)) + rng.choice(SUFFIXES)
        text += f" ({i})"
        rows.append({"id": f"{prefix}{i:04d}", "text": text, "label": label, "source_domain": domain})
    return rows


def write_jsonl(path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        for r in rows:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def main():
    assert len(LIWC) == 68 and len(NRC) == 10
    with (DATA / "sample_liwc.dic").open("w", encoding="utf-8") as f:
        f.write("%\n")
        for i, (cat, _) in enumerate(LIWC, 1):
            f.write(f"{i}\t{cat}\n")
        f.write("%\n")
        entries = {}
        for i, (_, words) in enumerate(LIWC, 1):
            for w in words.split():
                entries.setdefault(w, []).append(i)
        for w in sorted(entries):
            f.write(w + "\t" + "\t".join(str(c) for c in entries[w]) + "\n")
    with (DATA / "sample_nrc.tsv").open("w", encoding="utf-8") as f:
        words = sorted({w for ws in NRC.values() for w in ws.split()})
        for w in words:
            for cat, ws in NRC.items():
                f.write(f"{w}\t{cat}\t{1 if w in ws.split() else 0}\n")

    rng = random.Random(20191)
    fx = DATA / "fixtures"
    policy = corpus("pc", POLICY, POLICY_TAGS, 160, 0.3, 0.12, rng, "policy")
    immigration = corpus("im", IMMIGRATION, IMMIGRATION_TAGS, 160, 0.35, 0.08, rng, "immigration")
    write_jsonl(fx / "policy.jsonl", policy)
    write_jsonl(fx / "immigration.jsonl", immigration)

    raw = [dict(r) for r in policy[:30]]
    raw.append({"id": "rt0001", "text": "RT @utente: " + policy[0]["text"], "label": "normal"})
    raw.append({"id": "tag0001", "text": "#governo #decreto https://t.co/abc", "label": "normal"})
    raw.append({"id": "dup0001", "text": policy[1]["text"].upper(), "label": policy[1]["label"]})
    write_jsonl(fx / "raw_policy.jsonl", raw)

    stream = [dict(r) for r in policy[:60] + immigration[:60]]
    for r in stream:
        r.pop("label")
    write_jsonl(fx / "stream.jsonl", stream)
    (fx / "seeds.txt").write_text("#governo\n#decreto\n", encoding="utf-8")

    a = [{"id": r["id"], "text": r["text"], "label": r["label"]} for r in policy[:40]]
    b = [dict(r) for r in a]
    for r in b[::8]:
        r["label"] = "normal" if r["label"] == "hate" else "hate"
    write_jsonl(fx / "annotator_a.jsonl", a)
    write_jsonl(fx / "annotator_b.jsonl", b)


if __name__ == "__main__":
    main()
