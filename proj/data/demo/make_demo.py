"""Regenerates the synthetic demo vectors in this directory.

The vectors are clustered by pole so neighbors of a seed word tend to share
its category. They exist only to exercise the pipeline end to end.
"""
import random

CLUSTERS = {
    "joy": ["happy", "joyful", "cheerful", "glad", "delighted", "smile", "laugh", "celebrate"],
    "sadness": ["sad", "unhappy", "gloomy", "miserable", "grief", "mourn", "cry", "lonely"],
    "calmness": ["calm", "serene", "peaceful", "relaxed", "tranquil", "composed"],
    "anger": ["angry", "furious", "rage", "outraged", "hostile", "irate", "annoyed"],
    "pleasantness": ["pleasant", "lovely", "nice", "delightful", "charming", "agreeable", "good"],
    "disgust": ["disgusting", "nasty", "repulsive", "gross", "vile", "awful", "terrible"],
    "eagerness": ["eager", "keen", "enthusiastic", "excited", "curious", "hopeful"],
    "fear": ["afraid", "scared", "fearful", "terrified", "anxious", "panic", "worried"],
    "neutral": ["the", "a", "is", "was", "it", "he", "she", "they", "we", "i", "not", "very",
                "day", "news", "report", "minister", "city", "said", "people", "match"],
}
DIM = 12


def main():
    rng = random.Random(20201015)
    rows = []
    for name, words in CLUSTERS.items():
        center = [rng.uniform(-1, 1) for _ in range(DIM)]
        spread = 0.9 if name == "neutral" else 0.25
        for w in words:
            rows.append((w, [c + rng.gauss(0, spread) for c in center]))
    rows.sort()
    with open("vectors.txt", "w") as out:
        for w, v in rows:
            out.write(w + " " + " ".join(f"{x:.5f}" for x in v) + "\n")


if __name__ == "__main__":
    main()
