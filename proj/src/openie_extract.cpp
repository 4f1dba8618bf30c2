#include "logsum/openie_extract.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "logsum/tokenizer.hpp"

namespace logsum {

namespace {

std::string lowered(std::string_view word) {
  std::string out(word);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

using WordSet = std::unordered_set<std::string_view>;

const WordSet kLinking = {
    "is", "are", "was", "were", "am", "be", "been", "being",
    "become", "becomes", "became", "remain", "remains", "remained",
};

// Base forms recognized through their inflections (-s, -ed, -ing and the
// spelling variants). Bare base forms are deliberately not treated as verbs:
// log text uses many of these words as nouns ("process", "retry", "reboot"),
// while actual predicates almost always arrive inflected ("failed",
// "exceeds", "changing").
const WordSet kStems = {
    "abort",       "accept",     "access",     "acquire",    "activate",
    "add",         "allocate",   "append",     "apply",      "assign",
    "attach",      "authenticate", "authorize", "bind",      "block",
    "boot",        "break",      "build",      "cancel",     "change",
    "check",       "clear",      "close",      "commit",     "compile",
    "complete",    "configure",  "confirm",    "connect",    "copy",
    "crash",       "create",     "deactivate", "decode",     "decrease",
    "degrade",     "delete",     "deny",       "deploy",     "destroy",
    "detach",      "detect",     "disable",    "discard",    "disconnect",
    "dispatch",    "download",   "drain",      "drop",       "dump",
    "enable",      "encode",     "encounter",  "enqueue",    "enter",
    "evict",       "exceed",     "execute",    "exhaust",    "exit",
    "expire",      "export",     "fail",       "fetch",      "fill",
    "find",        "finish",     "flush",      "forward",    "generate",
    "grant",       "halt",       "handle",     "hang",       "ignore",
    "import",      "increase",   "initialize", "initiate",   "inject",
    "insert",      "install",    "interrupt",  "invalidate", "invoke",
    "issue",       "kill",       "launch",     "leak",       "leave",
    "listen",      "load",       "lock",       "lose",       "mark",
    "merge",       "migrate",    "miss",       "modify",     "mount",
    "move",        "notify",     "obtain",     "occur",      "open",
    "overflow",    "parse",      "pause",      "perform",    "poll",
    "probe",       "process",    "prune",      "publish",    "pull",
    "purge",       "push",       "query",      "queue",      "quit",
    "rebalance",   "reboot",     "rebuild",    "receive",    "reclaim",
    "recover",     "redirect",   "refresh",    "refuse",     "register",
    "reject",      "release",    "reload",     "remove",     "rename",
    "replace",     "replicate",  "report",     "request",    "require",
    "reset",       "resolve",    "respond",    "restart",    "restore",
    "resume",      "retry",      "retrieve",   "return",     "revoke",
    "roll",        "rotate",     "route",      "save",       "scan",
    "schedule",    "seal",       "seek",       "send",       "serve",
    "settle",      "skip",       "spawn",      "stall",      "start",
    "starve",      "stop",       "store",      "submit",     "subscribe",
    "succeed",     "suspend",    "switch",     "sync",       "synchronize",
    "terminate",   "throttle",   "throw",      "transfer",   "transmit",
    "trigger",     "truncate",   "unblock",    "unload",     "unlock",
    "unmount",     "update",     "upgrade",    "upload",     "validate",
    "verify",      "wait",       "wake",       "warn",       "write",
};

// Irregular or invariant forms matched directly.
const WordSet kIrregular = {
    "began",  "begun",   "broke",  "broken", "brought", "built",  "came",
    "caught", "chose",   "chosen", "did",    "done",    "drew",   "drawn",
    "fell",   "fallen",  "found",  "froze",  "frozen",  "gave",   "given",
    "got",    "gotten",  "grew",   "grown",  "held",    "hung",   "kept",
    "knew",   "known",   "led",    "left",   "lost",    "made",   "met",
    "ran",    "rose",    "risen",  "said",   "sank",    "saw",    "seen",
    "sent",   "set",     "shut",   "slept",  "sold",    "spent",  "stood",
    "stuck",  "swept",   "taken",  "threw",  "thrown",  "told",   "took",
    "went",   "gone",    "woke",   "woken",  "won",     "wrote",  "written",
};

const WordSet kPrepositions = {
    "to",      "from",   "in",      "on",      "at",      "by",     "with",
    "for",     "of",     "into",    "onto",    "over",    "under",  "during",
    "after",   "before", "between", "through", "within",  "without", "against",
    "across",  "toward", "towards", "via",     "per",     "until",  "since",
    "up",      "down",   "out",     "off",     "back",
};

bool stem_known(std::string_view s) { return kStems.contains(s); }

bool dedoubled_known(std::string_view s) {
  if (s.size() >= 3 && s[s.size() - 1] == s[s.size() - 2]) {
    return stem_known(s.substr(0, s.size() - 1));
  }
  return false;
}

bool inflected_verb(std::string_view w) {
  const std::size_t n = w.size();
  if (n > 4 && w.ends_with("ing")) {
    std::string_view base = w.substr(0, n - 3);
    if (stem_known(base) || dedoubled_known(base)) return true;
    if (stem_known(std::string(base) + "e")) return true;
  }
  if (n > 3 && w.ends_with("ed")) {
    std::string_view base = w.substr(0, n - 2);
    if (stem_known(base) || stem_known(w.substr(0, n - 1)) || dedoubled_known(base)) {
      return true;
    }
  }
  if (n > 3 && w.ends_with("es") && stem_known(w.substr(0, n - 2))) return true;
  if (n > 2 && w.ends_with("s") && !w.ends_with("ss") && stem_known(w.substr(0, n - 1))) {
    return true;
  }
  return false;
}

enum class Sep : unsigned char { kNone, kComma, kOther };

struct Clause {
  std::vector<std::string_view> tokens;  // original spelling
  Sep before = Sep::kNone;
  std::vector<std::size_t> verbs;        // positions of verb-like tokens
  bool consumed = false;
};

std::string join(const std::vector<std::string_view>& toks, std::size_t begin,
                 std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out += ' ';
    out += toks[i];
  }
  return out;
}

}  // namespace

namespace words {

bool linking_verb(std::string_view w) { return kLinking.contains(w); }

bool verb_like(std::string_view w) {
  return kLinking.contains(w) || kIrregular.contains(w) || inflected_verb(w);
}

bool preposition_or_particle(std::string_view w) { return kPrepositions.contains(w); }

}  // namespace words

std::vector<Triple> extract_openie_triples(std::span<const std::string> tokens) {
  std::vector<Clause> clauses;
  Clause current;
  Sep pending = Sep::kNone;

  auto close_clause = [&]() {
    if (current.tokens.empty()) return;
    current.before = pending;
    clauses.push_back(std::move(current));
    current = Clause{};
  };

  std::vector<std::string> lowers;
  lowers.reserve(tokens.size());
  for (const std::string& tok : tokens) lowers.push_back(lowered(tok));

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& low = lowers[i];
    const bool separator =
        is_delimiter_token(tokens[i]) || tokens[i] == "." || low == "and" || low == "or";
    if (separator) {
      const Sep kind = tokens[i] == "," ? Sep::kComma : Sep::kOther;
      if (!current.tokens.empty()) {
        close_clause();
        pending = kind;
      } else {
        // Consecutive separators break comma adjacency.
        pending = (clauses.empty() && pending == Sep::kNone) ? kind : Sep::kOther;
      }
      continue;
    }
    if (words::verb_like(low)) current.verbs.push_back(current.tokens.size());
    current.tokens.push_back(tokens[i]);
  }
  close_clause();

  std::vector<Triple> out;
  // Index of the immediately preceding clause when it is verbless and still
  // available as an apposition half or an arg1 donor.
  std::size_t donor = clauses.size();

  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    Clause& clause = clauses[ci];
    const std::vector<std::string_view>& toks = clause.tokens;
    const bool adjacent_donor =
        donor + 1 == ci && clause.before == Sep::kComma && !clauses[donor].consumed;

    if (clause.verbs.empty()) {
      if (adjacent_donor) {
        Triple t;
        t.arg1 = join(clauses[donor].tokens, 0, clauses[donor].tokens.size());
        t.relation = "is";
        t.arg2 = join(toks, 0, toks.size());
        t.source = TripleSource::kOpenIe;
        out.push_back(std::move(t));
        clauses[donor].consumed = true;
        clause.consumed = true;
        donor = clauses.size();
      } else {
        donor = ci;
      }
      continue;
    }

    const std::size_t first_verb = clause.verbs.front();
    std::size_t head = first_verb;
    for (std::size_t v : clause.verbs) {
      std::string low = lowered(toks[v]);
      if (words::linking_verb(low)) {
        head = v;
        break;
      }
    }

    // Fold prepositions/particles into the relation until the next verb-like
    // token, keeping at least one token behind for arg2.
    std::size_t window_end = toks.size();
    for (std::size_t v : clause.verbs) {
      if (v > head) {
        window_end = v;
        break;
      }
    }
    std::size_t rel_end = head;
    for (std::size_t p = head + 1; p < window_end; ++p) {
      if (p + 1 < toks.size() && words::preposition_or_particle(lowered(toks[p]))) {
        rel_end = p;
      }
    }

    Triple t;
    t.arg1 = join(toks, 0, first_verb);
    t.relation = join(toks, head, rel_end + 1);
    t.arg2 = rel_end + 1 < toks.size() ? join(toks, rel_end + 1, toks.size()) : "";
    t.source = TripleSource::kOpenIe;

    if (t.arg1.empty() && adjacent_donor) {
      t.arg1 = join(clauses[donor].tokens, 0, clauses[donor].tokens.size());
      clauses[donor].consumed = true;
    }
    donor = clauses.size();
    if (!t.arg1.empty() || !t.arg2.empty()) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace logsum
