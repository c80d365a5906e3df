#include "nrlab/corpus.hpp"

#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "nrlab/rng.hpp"

namespace nrlab {

namespace {

// ~1000 common English words; order fixes Zipf ranks.
const char* kVocab[] = {
    "the", "of", "and", "to", "a", "in", "is", "it", "you", "that", "he", "was", "for",
    "on", "are", "with", "as", "his", "they", "be", "at", "one", "have", "this", "from",
    "or", "had", "by", "hot", "word", "but", "what", "some", "we", "can", "out", "other",
    "were", "all", "there", "when", "up", "use", "your", "how", "said", "an", "each",
    "she", "which", "do", "their", "time", "if", "will", "way", "about", "many", "then",
    "them", "write", "would", "like", "so", "these", "her", "long", "make", "thing",
    "see", "him", "two", "has", "look", "more", "day", "could", "go", "come", "did",
    "number", "sound", "no", "most", "people", "my", "over", "know", "water", "than",
    "call", "first", "who", "may", "down", "side", "been", "now", "find", "any", "new",
    "work", "part", "take", "get", "place", "made", "live", "where", "after", "back",
    "little", "only", "round", "man", "year", "came", "show", "every", "good", "me",
    "give", "our", "under", "name", "very", "through", "just", "form", "sentence",
    "great", "think", "say", "help", "low", "line", "differ", "turn", "cause", "much",
    "mean", "before", "move", "right", "boy", "old", "too", "same", "tell", "does",
    "set", "three", "want", "air", "well", "also", "play", "small", "end", "put",
    "home", "read", "hand", "port", "large", "spell", "add", "even", "land", "here",
    "must", "big", "high", "such", "follow", "act", "why", "ask", "men", "change",
    "went", "light", "kind", "off", "need", "house", "picture", "try", "us", "again",
    "animal", "point", "mother", "world", "near", "build", "self", "earth", "father",
    "head", "stand", "own", "page", "should", "country", "found", "answer", "school",
    "grow", "study", "still", "learn", "plant", "cover", "food", "sun", "four",
    "between", "state", "keep", "eye", "never", "last", "let", "thought", "city",
    "tree", "cross", "farm", "hard", "start", "might", "story", "saw", "far", "sea",
    "draw", "left", "late", "run", "while", "press", "close", "night", "real", "life",
    "few", "north", "open", "seem", "together", "next", "white", "children", "begin",
    "got", "walk", "example", "ease", "paper", "group", "always", "music", "those",
    "both", "mark", "often", "letter", "until", "mile", "river", "car", "feet", "care",
    "second", "book", "carry", "took", "science", "eat", "room", "friend", "began",
    "idea", "fish", "mountain", "stop", "once", "base", "hear", "horse", "cut", "sure",
    "watch", "color", "face", "wood", "main", "enough", "plain", "girl", "usual",
    "young", "ready", "above", "ever", "red", "list", "though", "feel", "talk", "bird",
    "soon", "body", "dog", "family", "direct", "pose", "leave", "song", "measure",
    "door", "product", "black", "short", "numeral", "class", "wind", "question",
    "happen", "complete", "ship", "area", "half", "rock", "order", "fire", "south",
    "problem", "piece", "told", "knew", "pass", "since", "top", "whole", "king",
    "space", "heard", "best", "hour", "better", "true", "during", "hundred", "five",
    "remember", "step", "early", "hold", "west", "ground", "interest", "reach", "fast",
    "verb", "sing", "listen", "six", "table", "travel", "less", "morning", "ten",
    "simple", "several", "vowel", "toward", "war", "lay", "against", "pattern", "slow",
    "center", "love", "person", "money", "serve", "appear", "road", "map", "rain",
    "rule", "govern", "pull", "cold", "notice", "voice", "unit", "power", "town",
    "fine", "certain", "fly", "fall", "lead", "cry", "dark", "machine", "note", "wait",
    "plan", "figure", "star", "box", "noun", "field", "rest", "correct", "able",
    "pound", "done", "beauty", "drive", "stood", "contain", "front", "teach", "week",
    "final", "gave", "green", "oh", "quick", "develop", "ocean", "warm", "free",
    "minute", "strong", "special", "mind", "behind", "clear", "tail", "produce",
    "fact", "street", "inch", "multiply", "nothing", "course", "stay", "wheel",
    "full", "force", "blue", "object", "decide", "surface", "deep", "moon", "island",
    "foot", "system", "busy", "test", "record", "boat", "common", "gold", "possible",
    "plane", "stead", "dry", "wonder", "laugh", "thousand", "ago", "ran", "check",
    "game", "shape", "equate", "miss", "brought", "heat", "snow", "tire", "bring",
    "yes", "distant", "fill", "east", "paint", "language", "among", "grand", "ball",
    "yet", "wave", "drop", "heart", "am", "present", "heavy", "dance", "engine",
    "position", "arm", "wide", "sail", "material", "size", "vary", "settle", "speak",
    "weight", "general", "ice", "matter", "circle", "pair", "include", "divide",
    "syllable", "felt", "perhaps", "pick", "sudden", "count", "square", "reason",
    "length", "represent", "art", "subject", "region", "energy", "hunt", "probable",
    "bed", "brother", "egg", "ride", "cell", "believe", "fraction", "forest", "sit",
    "race", "window", "store", "summer", "train", "sleep", "prove", "lone", "leg",
    "exercise", "wall", "catch", "mount", "wish", "sky", "board", "joy", "winter",
    "sat", "written", "wild", "instrument", "kept", "glass", "grass", "cow", "job",
    "edge", "sign", "visit", "past", "soft", "fun", "bright", "gas", "weather",
    "month", "million", "bear", "finish", "happy", "hope", "flower", "clothe",
    "strange", "gone", "jump", "baby", "eight", "village", "meet", "root", "buy",
    "raise", "solve", "metal", "whether", "push", "seven", "paragraph", "third",
    "shall", "held", "hair", "describe", "cook", "floor", "either", "result", "burn",
    "hill", "safe", "cat", "century", "consider", "type", "law", "bit", "coast",
    "copy", "phrase", "silent", "tall", "sand", "soil", "roll", "temperature",
    "finger", "industry", "value", "fight", "lie", "beat", "excite", "natural",
    "view", "sense", "ear", "else", "quite", "broke", "case", "middle", "kill",
    "son", "lake", "moment", "scale", "loud", "spring", "observe", "child",
    "straight", "consonant", "nation", "dictionary", "milk", "speed", "method",
    "organ", "pay", "age", "section", "dress", "cloud", "surprise", "quiet", "stone",
    "tiny", "climb", "cool", "design", "poor", "lot", "experiment", "bottom", "key",
    "iron", "single", "stick", "flat", "twenty", "skin", "smile", "crease", "hole",
    "trade", "melody", "trip", "office", "receive", "row", "mouth", "exact",
    "symbol", "die", "least", "trouble", "shout", "except", "wrote", "seed", "tone",
    "join", "suggest", "clean", "break", "lady", "yard", "rise", "bad", "blow",
    "oil", "blood", "touch", "grew", "cent", "mix", "team", "wire", "cost", "lost",
    "brown", "wear", "garden", "equal", "sent", "choose", "fell", "fit", "flow",
    "fair", "bank", "collect", "save", "control", "decimal", "gentle", "woman",
    "captain", "practice", "separate", "difficult", "doctor", "please", "protect",
    "noon", "whose", "locate", "ring", "character", "insect", "caught", "period",
    "indicate", "radio", "spoke", "atom", "human", "history", "effect", "electric",
    "expect", "crop", "modern", "element", "hit", "student", "corner", "party",
    "supply", "bone", "rail", "imagine", "provide", "agree", "thus", "capital",
    "chair", "danger", "fruit", "rich", "thick", "soldier", "process", "operate",
    "guess", "necessary", "sharp", "wing", "create", "neighbor", "wash", "bat",
    "rather", "crowd", "corn", "compare", "poem", "string", "bell", "depend",
    "meat", "rub", "tube", "famous", "dollar", "stream", "fear", "sight", "thin",
    "triangle", "planet", "hurry", "chief", "colony", "clock", "mine", "tie",
    "enter", "major", "fresh", "search", "send", "yellow", "gun", "allow", "print",
    "dead", "spot", "desert", "suit", "current", "lift", "rose", "arrive", "master",
    "track", "parent", "shore", "division", "sheet", "substance", "favor",
    "connect", "post", "spend", "chord", "fat", "glad", "original", "share",
    "station", "dad", "bread", "charge", "proper", "bar", "offer", "segment",
    "slave", "duck", "instant", "market", "degree", "populate", "chick", "dear",
    "enemy", "reply", "drink", "occur", "support", "speech", "nature", "range",
    "steam", "motion", "path", "liquid", "log", "meant", "quotient", "teeth",
    "shell", "neck", "oxygen", "sugar", "death", "pretty", "skill", "women",
    "season", "solution", "magnet", "silver", "thank", "branch", "match", "suffix",
    "especially", "fig", "afraid", "huge", "sister", "steel", "discuss", "forward",
    "similar", "guide", "experience", "score", "apple", "bought", "led", "pitch",
    "coat", "mass", "card", "band", "rope", "slip", "win", "dream", "evening",
    "condition", "feed", "tool", "total", "basic", "smell", "valley", "nor",
    "double", "seat", "continue", "block", "chart", "hat", "sell", "success",
    "company", "subtract", "event", "particular", "deal", "swim", "term",
    "opposite", "wife", "shoe", "shoulder", "spread", "arrange", "camp", "invent",
    "cotton", "born", "determine", "quart", "nine", "truck", "noise", "level",
    "chance", "gather", "shop", "stretch", "throw", "shine", "property", "column",
    "molecule", "select", "wrong", "gray", "repeat", "require", "broad", "prepare",
    "salt", "nose", "plural", "anger", "claim", "continent", "memory", "storage",
    "signal", "error", "correction", "channel", "code", "decode", "encode",
    "network", "device", "bitrate", "segment", "buffer", "archive", "library",
    "software", "hardware", "server", "request", "message", "packet", "protocol",
    "failure", "repair", "backup", "restore", "durable", "reliable", "capacity",
    "density", "threshold", "redundancy", "compress", "recover", "detect",
};
constexpr int kBaseVocabSize = int(sizeof(kVocab) / sizeof(kVocab[0]));

struct Phrase {
    int a, b;  // vocab indices
};

// Deterministic pseudo-words fill out the content vocabulary. A thousand
// embedded words would make co-occurrence statistics far denser than any
// real language; the generated tail keeps content words rare and distinct.
std::vector<std::string> make_vocab() {
    std::vector<std::string> vocab(kVocab, kVocab + kBaseVocabSize);
    std::unordered_set<std::string> seen(vocab.begin(), vocab.end());
    const char* onsets[] = {"b", "br", "c", "cl", "d", "dr", "f", "fl", "g",  "gr", "h",
                            "j", "k",  "l", "m",  "n", "p",  "pl", "qu", "r", "s",  "sk",
                            "sl", "sp", "st", "t", "tr", "v", "w", "z"};
    const char* nuclei[] = {"a", "e", "i", "o", "u", "ai", "ea", "ou", "io"};
    const char* codas[] = {"", "n", "r", "l", "s", "t", "m", "ck", "nd", "x"};
    Rng g(mix64(0xbadc0de1));
    const int kPseudo = 3000;
    while (int(vocab.size()) < kBaseVocabSize + kPseudo) {
        std::string w;
        int syllables = 2 + int(g.next_below(2));
        for (int s = 0; s < syllables; ++s) {
            w += onsets[g.next_below(30)];
            w += nuclei[g.next_below(9)];
        }
        w += codas[g.next_below(10)];
        if (w.size() < 7 || !seen.insert(w).second) continue;
        vocab.push_back(std::move(w));
    }
    return vocab;
}

}  // namespace

Bytes generate_corpus(const CorpusParams& params) {
    Rng rng(mix64(params.seed ^ 0x5c0ffee5ull));
    static const std::vector<std::string> vocab = make_vocab();
    const int vocab_size = int(vocab.size());

    // Zipf weights over the vocabulary
    std::vector<double> cum(vocab_size);
    double acc = 0.0;
    for (int i = 0; i < vocab_size; ++i) {
        acc += 1.0 / std::pow(double(i + 1), 1.05);
        cum[i] = acc;
    }
    for (double& c : cum) c /= acc;
    auto draw_word = [&]() -> int {
        double u = rng.next_double();
        int lo = 0, hi = vocab_size - 1;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (cum[mid] < u)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    };

    // phrases pair up generated content words; recurring phrases of short
    // common words would defeat the validity filters downstream
    const int kPhrases = 64;
    std::vector<Phrase> phrases;
    Rng prng(mix64(0x9e1ec7ed));
    while (int(phrases.size()) < kPhrases) {
        int a = kBaseVocabSize + int(prng.next_below(vocab_size - kBaseVocabSize));
        int b = kBaseVocabSize + int(prng.next_below(vocab_size - kBaseVocabSize));
        if (a != b) phrases.push_back({a, b});
    }

    // topics partition the generated content words, so co-location evidence
    // stays topic-specific instead of tying every frequent word together
    const int kTopics = 32;
    const int kTopicWords = (vocab_size - kBaseVocabSize) / kTopics;
    std::vector<std::vector<int>> topic_words(kTopics);
    std::vector<std::vector<int>> topic_phrases(kTopics);
    for (int t = 0; t < kTopics; ++t) {
        for (int j = 0; j < kTopicWords; ++j)
            topic_words[t].push_back(kBaseVocabSize + t * kTopicWords + j);
        topic_phrases[t].push_back(int(prng.next_below(kPhrases)));
        topic_phrases[t].push_back(int(prng.next_below(kPhrases)));
    }

    Bytes out;
    out.reserve(params.target_chars + 256);
    while (out.size() < params.target_chars) {
        int topic = int(rng.next_below(kTopics));
        int sentences = 3 + int(rng.next_below(6));
        for (int s = 0; s < sentences; ++s) {
            int len = 6 + int(rng.next_below(9));
            for (int w = 0; w < len; ++w) {
                if (w > 0) out.push_back(' ');
                double u = rng.next_double();
                if (u < 0.05) {
                    const auto& tp = topic_phrases[topic];
                    Phrase ph = phrases[tp[rng.next_below(tp.size())]];
                    out += vocab[ph.a];
                    out.push_back(' ');
                    out += vocab[ph.b];
                    ++w;
                } else if (u < 0.25) {
                    const auto& tw = topic_words[topic];
                    out += vocab[tw[rng.next_below(tw.size())]];
                } else {
                    out += vocab[draw_word()];
                }
            }
            if (rng.next_double() < 0.12 && s + 1 < sentences) {
                out += ", ";
                continue;
            }
            out += ". ";
        }
        out.push_back('\n');
    }
    out.resize(params.target_chars);
    return out;
}

}  // namespace nrlab
