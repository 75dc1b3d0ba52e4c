"""Closed word classes and a small verb lexicon for the fallback tagger.

The lists target the register of normative documents (contracts, terms of
service, regulations); unknown content words default to nouns and get
promoted to verbs by context.
"""

DETERMINERS = {
    "a", "an", "the", "this", "that", "these", "those", "all", "any",
    "each", "every", "no", "some", "both", "either", "neither", "another",
}

AUX_FORMS = {
    "is", "are", "was", "were", "be", "been", "being", "am",
    "has", "have", "had", "do", "does", "did",
    "will", "shall", "may", "might", "must", "can", "could", "would", "should",
}

BE_FORMS = {"is", "are", "was", "were", "be", "been", "being", "am"}

PRONOUNS = {"you", "we", "i", "it", "they", "he", "she", "them", "him", "us", "me", "who", "whom"}

POSSESSIVE_PRONOUNS = {"your", "our", "its", "my", "their", "his", "her",
                       "yours", "ours", "theirs", "mine", "hers"}

ADPOSITIONS = {
    "in", "on", "at", "by", "for", "with", "from", "to", "of", "under",
    "over", "within", "after", "before", "during", "until", "since",
    "between", "through", "upon", "into", "without", "against", "per",
    "via", "about", "above", "below", "across", "along", "around", "near",
    "off", "out", "towards", "toward", "regarding", "concerning",
}

COORDINATORS = {"and", "or", "but", "nor"}

SUBORDINATORS = {"if", "when", "while", "unless", "because", "although",
                 "though", "once", "whereas", "whenever", "provided"}

ADVERBS = {
    "only", "also", "however", "very", "always", "immediately", "promptly",
    "soon", "now", "then", "otherwise", "hereby", "thereby", "herein",
    "thereof", "solely", "never", "further", "moreover", "furthermore",
    "publicly", "privately", "directly", "indirectly", "reasonably",
}

NUMBER_WORDS = {"one", "two", "three", "four", "five", "six", "seven",
                "eight", "nine", "ten", "eleven", "twelve", "twenty",
                "thirty", "sixty", "ninety", "hundred", "thousand"}

ADJECTIVES = {
    "reasonable", "other", "single", "multiple", "commercial",
    "unauthorized", "unauthorised", "personal", "applicable", "liable",
    "responsible", "due", "entire", "sole", "exclusive", "new", "own",
    "such", "legal", "illegal", "malicious", "third", "prior", "written",
    "effective", "confidential", "rental", "additional", "necessary",
}

ADJ_SUFFIXES = ("able", "ible", "ive", "ous", "ful", "less", "ant", "ent",
                "al", "ic", "ary")

VERB_LEXICON = {
    "accept", "access", "acknowledge", "agree", "allow", "apply", "arise",
    "assign", "assume", "authorize", "bear", "become", "bill", "breach",
    "cancel", "change", "charge", "claim", "collect", "comply", "consent",
    "constitute", "contact", "copy", "create", "cure", "defend", "delete",
    "deliver", "disable", "disclose", "display", "distribute", "download",
    "enforce", "ensure", "entitle", "execute", "expire", "export", "extend",
    "follow", "give", "govern", "grant", "hold", "host", "identify",
    "include", "incur", "indemnify", "inform", "install", "keep", "last",
    "license", "limit", "log", "maintain", "make", "manage", "mean",
    "modify", "monitor", "notify", "obligate", "oblige", "obtain",
    "operate", "opt", "pay", "perform", "permit", "post", "process",
    "prohibit", "protect", "provide", "publish", "read", "receive",
    "refund", "register", "reimburse", "remain", "remove", "renew",
    "report", "represent", "reproduce", "request", "require", "reserve",
    "resolve", "respond", "restrict", "retain", "return", "review",
    "secure", "send", "settle", "share", "sign", "store", "submit", "sue",
    "suspend", "take", "terminate", "track", "transfer", "understand",
    "update", "upload", "use", "verify", "violate", "waive", "warrant",
    "write",
}

IRREGULAR_PARTICIPLES = {
    "taken": "take", "given": "give", "made": "make", "held": "hold",
    "kept": "keep", "paid": "pay", "sent": "send", "written": "write",
    "read": "read", "borne": "bear", "become": "become", "meant": "mean",
    "sued": "sue", "understood": "understand",
}

NOUN_IRREGULAR_PLURALS = {
    "people": "person", "children": "child", "men": "man", "women": "woman",
    "feet": "foot", "parties": "party",
}
