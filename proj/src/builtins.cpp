#include "steinergap/builtins.hpp"

#include <sstream>
#include <stdexcept>

namespace steinergap {

namespace {

struct Entry {
  const char* name;
  const char* description;
  int n;
  int t;
  const char* arcs;  // "i>j" with the default value, "i>j=v" otherwise; 1-based
  const char* value;
  const char* gap;
};

// Transcribed point data. Node 1 is the root, 2..t the terminals. The
// fig5-a and fig5-d drawings appear under each other's caption; the names
// follow the captions.
const Entry kEntries[] = {
    {"skutella", "15 nodes, 8 terminals, every arc 1/4", 15, 8,
     "1>9 1>10 1>11 1>12 1>13 1>14 1>15 "
     "9>2 9>3 9>4 9>5 10>2 10>3 10>6 10>7 11>2 11>4 11>6 11>8 12>2 12>5 12>7 12>8 "
     "13>4 13>5 13>6 13>7 14>3 14>4 14>7 14>8 15>3 15>5 15>6 15>8",
     "1/4", "8/7"},
    {"oddwheel-7-4-a", "odd wheel, root feeding the three Steiner nodes", 7, 4,
     "1>5 1>6 1>7 5>2 5>3 6>3 6>4 7>4 7>2", "1/2", "10/9"},
    {"oddwheel-7-4-b", "odd wheel, root feeding two Steiner nodes", 7, 4,
     "5>2 6>2 2>7 5>3 1>5 1>6 6>4 7>4 7>3", "1/2", "10/9"},
    {"oddwheel-7-4-c", "odd wheel, root feeding two Steiner nodes", 7, 4,
     "5>2 2>6 7>2 1>5 5>3 6>3 6>4 7>4 1>7", "1/2", "10/9"},
    {"oddwheel-7-4-d", "odd wheel, root feeding two Steiner nodes", 7, 4,
     "2>5 6>2 7>2 5>3 5>4 6>4 1>6 1>7 7>3", "1/2", "10/9"},
    {"fig3-a", "odd wheel with a pendant terminal", 8, 5,
     "1>6 1>7 1>8 6>2 6>4 7>4 7>5 8>5 8>2 2>3=1", "1/2", "10/9"},
    {"fig3-b", "odd wheel with a pendant terminal", 8, 5,
     "6>2 7>2 2>8 6>3 1>6 1>7 7>5 8>5 8>3 2>4=1", "1/2", "10/9"},
    {"fig3-c", "odd wheel with a terminal taking over the out-arcs", 8, 5,
     "6>2 7>2 4>8 6>3 1>6 1>7 7>5 8>5 8>3 2>4=1", "1/2", "10/9"},
    {"fig3-d", "odd wheel below a new root", 8, 5,
     "2>6 2>7 2>8 6>3 6>4 7>4 7>5 8>5 8>3 1>2=1", "1/2", "10/9"},
    {"fig5-a", "(8,5) vertex of largest gap", 8, 5,
     "1>7 1>8 7>2 7>3 8>4 8>5 5>3 3>6 6>5 6>4 6>2", "1/2", "12/11"},
    {"fig5-b", "(9,5) vertex", 9, 5,
     "6>2 7>9 2>8 2>5 9>5 9>2 6>3 1>6 1>7 7>4 8>4 8>3", "1/2", "10/9"},
    {"fig5-c", "(9,6) vertex", 9, 6,
     "1>8 1>7 7>5 7>4 7>6 7>2 8>5 8>3 8>6 8>2 5>9 9>3 9>4", "1/2", "14/13"},
    {"fig5-d", "(8,5) vertex that is not reached from a connected cost-1 graph", 8, 5,
     "2>7 7>5 7>3 1>5 1>6 6>3 6>2 6>4 5>8 8>2 8>4", "1/2", "14/13"},
    {"fig5-e", "(8,5) vertex", 8, 5,
     "1>3 1>4 1>8 3>6 4>7 8>2 8>5 6>2 7>5 6>4 7>3", "1/2", "18/17"},
    {"fig5-f", "(9,6) vertex", 9, 6,
     "1>8 1>9 8>6 8>2 8>3 9>4 9>5 7>3 7>5 2>4 9>2 2>7 5>6", "1/2", "16/15"},
    {"fig5-g", "(9,6) vertex", 9, 6,
     "1>4 1>2 1>6 1>7 7>4 7>3 7>5 8>6 9>3 9>2 6>9 8>5 2>8", "1/2", "20/19"},
    {"fig5-h", "(9,6) vertex", 9, 6,
     "7>2 9>2 7>3 1>8 1>9 8>3 8>6 6>7 6>4 5>6 4>5 3>5 9>4", "1/2", "22/21"},
    {"fig5-i", "(9,6) vertex", 9, 6,
     "1>9 1>8 8>4 8>3 8>5 5>7 2>5 7>3 3>2 7>6 9>2 9>6 6>4", "1/2", "24/23"},
};

// fig4-a..c name the first three points of the fig5 family.
const char* alias(const std::string& name) {
  if (name == "fig4-a") return "fig5-a";
  if (name == "fig4-b") return "fig5-b";
  if (name == "fig4-c") return "fig5-c";
  return nullptr;
}

ArcVector parse_arcs(int n, const std::string& arcs, const Rational& value) {
  ArcVector x(n);
  std::istringstream in(arcs);
  std::string tok;
  while (in >> tok) {
    auto gt = tok.find('>');
    auto eq = tok.find('=');
    int i = std::stoi(tok.substr(0, gt)) - 1;
    int j = std::stoi(tok.substr(gt + 1, eq == std::string::npos ? std::string::npos : eq - gt - 1)) - 1;
    x.set(i, j, eq == std::string::npos ? value : Rational::parse(tok.substr(eq + 1)));
  }
  return x;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& e : kEntries) names.emplace_back(e.name);
  names.insert(names.end(), {"fig4-a", "fig4-b", "fig4-c", "path-2t3"});
  return names;
}

ArcVector path_2t3(int t) {
  if (t < 3) throw std::invalid_argument("path-2t3 needs t >= 3");
  int n = 2 * t - 2;
  ArcVector x(n);
  // 0-based: root 0, terminals 1..t-1, Steiner t..2t-3
  x.set(0, t, 1);
  x.set(n - 1, t - 1, 1);
  for (int i = 1; i <= t - 3; ++i) x.set(t + i - 1, t + i, 1);
  for (int i = 1; i <= t - 2; ++i) x.set(t + i - 1, i, 1);
  return x;
}

Builtin builtin(const std::string& name, int t) {
  if (name == "path-2t3") {
    Builtin b;
    b.name = name;
    b.description = "integer tree with 2t-3 arcs on 2t-2 nodes";
    b.x = path_2t3(t);
    b.n = b.x.n();
    b.t = t;
    b.expected_gap = Rational(1);
    return b;
  }
  std::string key = name;
  if (const char* a = alias(name)) key = a;
  for (const auto& e : kEntries) {
    if (key != e.name) continue;
    Builtin b;
    b.name = name;
    b.description = e.description;
    b.n = e.n;
    b.t = e.t;
    b.x = parse_arcs(e.n, e.arcs, Rational::parse(e.value));
    b.expected_gap = Rational::parse(e.gap);
    return b;
  }
  throw std::invalid_argument("unknown builtin: " + name);
}

}  // namespace steinergap
