#!/usr/bin/env python3
"""Regenerates data/sample/*.txt: pseudo-random Bangla prose built from a
fixed vocabulary with a fixed seed. Output is committed; rerunning must give
identical bytes."""

import pathlib
import random

WORDS = """
আমি তুমি সে আমরা তোমরা তারা এই সেই যে কি কেন কোথায় কখন কিভাবে
বাংলা ভাষা দেশ মানুষ জীবন সময় কাজ বই পড়া লেখা কথা বলা শোনা দেখা
বাড়ি গ্রাম শহর নদী পাখি গাছ ফুল আকাশ মাটি জল বাতাস আলো রাত দিন
সকাল বিকাল সন্ধ্যা মা বাবা ভাই বোন বন্ধু শিক্ষক ছাত্র স্কুল কলেজ
বিশ্ববিদ্যালয় পরীক্ষা প্রশ্ন উত্তর সমস্যা সমাধান উন্নয়ন সরকার রাজনীতি
অর্থনীতি বাজার দাম টাকা ব্যবসা কৃষক ধান চাল মাছ ভাত রান্না খাবার
স্বাস্থ্য চিকিৎসা ডাক্তার হাসপাতাল রোগ ঔষধ শরীর মন ভালো মন্দ সুন্দর
বড় ছোট নতুন পুরাতন অনেক কম বেশি সব কিছু কেউ প্রতিদিন আজ কাল পরশু
করে করেন করছে করেছিল করবে হয় হলো হবে ছিল আছে নেই যায় গেল যাবে আসে
এলো আসবে দেয় দিল দেবে নেয় নিল নেবে থাকে থাকল থাকবে পারে পারল পারবে
গান কবিতা উপন্যাস গল্প নাটক চলচ্চিত্র সংস্কৃতি ইতিহাস ঐতিহ্য উৎসব
বর্ষা গ্রীষ্ম শীত বসন্ত শরৎ হেমন্ত বৃষ্টি মেঘ রোদ ঝড় বন্যা প্রকৃতি
রাস্তা গাড়ি নৌকা ট্রেন যাত্রা ভ্রমণ পথ ঘর দরজা জানালা টেবিল চেয়ার
কম্পিউটার প্রযুক্তি বিজ্ঞান গবেষণা তথ্য সংখ্যা হিসাব পদ্ধতি ফলাফল
কীবোর্ড অক্ষর শব্দ বাক্য হাত আঙুল টাইপ দ্রুত সহজ কঠিন বিন্যাস
ধর্ম ঈশ্বর প্রার্থনা মসজিদ মন্দির গির্জা শান্তি যুদ্ধ স্বাধীনতা
মুক্তিযুদ্ধ বীর শহীদ স্মৃতি ভালোবাসা আনন্দ দুঃখ আশা স্বপ্ন ভবিষ্যৎ
এবং কিন্তু অথবা তবে যদি তাহলে কারণ জন্য সঙ্গে থেকে পর্যন্ত মধ্যে উপর নিচে
ঋতু ঊষা ঐক্য ঔজ্জ্বল্য ঢাকা চট্টগ্রাম খুলনা রাজশাহী সিলেট বরিশাল
""".split()

ENDINGS = ["।", "।", "।", "?", "!"]


def sentence(rng):
    n = rng.randint(4, 12)
    words = [rng.choice(WORDS) for _ in range(n)]
    if rng.random() < 0.15:
        words.insert(rng.randint(0, n), str(rng.randint(1, 2024)))
    if rng.random() < 0.1:
        words.insert(rng.randint(0, n), "১৯৭১")
    text = " ".join(words)
    if rng.random() < 0.2:
        text = text.replace(" ", ", ", 1)
    return text + rng.choice(ENDINGS)


def paragraph(rng):
    return " ".join(sentence(rng) for _ in range(rng.randint(3, 7)))


def main():
    rng = random.Random(20240611)
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "sample"
    out.mkdir(parents=True, exist_ok=True)
    for name, target in [("part-a.txt", 18000), ("part-b.txt", 17000), ("part-c.txt", 16000)]:
        paras = []
        size = 0
        while size < target:
            p = paragraph(rng)
            paras.append(p)
            size += len(p.encode("utf-8")) + 2
        (out / name).write_text("\n\n".join(paras) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
