#include "ngrpd/report.hpp"

#include <sstream>

namespace ngrpd {

  std::string to_string(Status s) {
    switch (s) {
      case Status::pass:
        return "pass";
      case Status::inconclusive:
        return "inconclusive";
      case Status::refused:
        return "refused";
      case Status::fail:
        return "fail";
    }
    return "fail";
  }

  Status combine(Status a, Status b) {
    return static_cast<int>(a) > static_cast<int>(b) ? a : b;
  }

  int exit_code(Status s) {
    switch (s) {
      case Status::pass:
        return 0;
      case Status::fail:
        return 1;
      case Status::refused:
        return 2;
      case Status::inconclusive:
        return 3;
    }
    return 1;
  }

  void Report::record(std::string const& check, bool ok, json witness) {
    record(check, ok ? Status::pass : Status::fail, std::move(witness));
  }

  void Report::record(std::string const& check, Status status, json witness) {
    auto& t = _checks[check];
    switch (status) {
      case Status::pass:
        ++t.passed;
        return;
      case Status::fail:
        ++t.failed;
        break;
      case Status::refused:
        ++t.refused;
        break;
      case Status::inconclusive:
        ++t.inconclusive;
        break;
    }
    if (t.witnesses.size() < max_witnesses) {
      t.witnesses.push_back(std::move(witness));
    }
  }

  void Report::declare(std::string const& check) {
    _checks[check];
  }

  void Report::set_range(std::string const& key, json value) {
    _ranges[key] = std::move(value);
  }

  void Report::note(std::string const& text) {
    _notes.push_back(text);
  }

  void Report::merge(Report const& other, std::string const& prefix) {
    for (auto const& [name, tally] : other._checks) {
      auto& t = _checks[prefix + name];
      t.passed += tally.passed;
      t.failed += tally.failed;
      t.refused += tally.refused;
      t.inconclusive += tally.inconclusive;
      for (auto const& w : tally.witnesses) {
        if (t.witnesses.size() < max_witnesses) {
          t.witnesses.push_back(w);
        }
      }
    }
    for (auto const& [k, v] : other._ranges.items()) {
      _ranges[prefix + k] = v;
    }
    for (auto const& n : other._notes) {
      _notes.push_back(n);
    }
  }

  Status Report::overall() const {
    Status s = Status::pass;
    for (auto const& [name, t] : _checks) {
      if (t.failed > 0) {
        s = combine(s, Status::fail);
      }
      if (t.refused > 0) {
        s = combine(s, Status::refused);
      }
      if (t.inconclusive > 0) {
        s = combine(s, Status::inconclusive);
      }
    }
    return s;
  }

  std::size_t Report::failures(std::string const& check) const {
    auto it = _checks.find(check);
    return it == _checks.end() ? 0 : it->second.failed;
  }

  std::size_t Report::passes(std::string const& check) const {
    auto it = _checks.find(check);
    return it == _checks.end() ? 0 : it->second.passed;
  }

  std::size_t Report::instances() const {
    std::size_t n = 0;
    for (auto const& [name, t] : _checks) {
      n += t.passed + t.failed + t.refused + t.inconclusive;
    }
    return n;
  }

  json Report::first_witness(std::string const& check) const {
    auto it = _checks.find(check);
    if (it == _checks.end() || it->second.witnesses.empty()) {
      return nullptr;
    }
    return it->second.witnesses.front();
  }

  json Report::to_json() const {
    json checks = json::object();
    for (auto const& [name, t] : _checks) {
      json c;
      c["passed"]       = t.passed;
      c["failed"]       = t.failed;
      c["refused"]      = t.refused;
      c["inconclusive"] = t.inconclusive;
      c["witnesses"]    = t.witnesses;
      checks[name]      = std::move(c);
    }
    json out;
    out["command"]         = _command;
    out["checks"]          = std::move(checks);
    out["verified_range"]  = _ranges;
    out["notes"]           = _notes;
    out["status"]          = to_string(overall());
    return out;
  }

  std::string Report::summary() const {
    std::ostringstream os;
    os << _command << ": " << to_string(overall()) << "\n";
    for (auto const& [name, t] : _checks) {
      os << "  " << name << ": " << t.passed << " passed";
      if (t.failed > 0) {
        os << ", " << t.failed << " failed";
      }
      if (t.refused > 0) {
        os << ", " << t.refused << " refused";
      }
      if (t.inconclusive > 0) {
        os << ", " << t.inconclusive << " inconclusive";
      }
      if (!t.witnesses.empty()) {
        os << "  first witness: " << t.witnesses.front().dump();
      }
      os << "\n";
    }
    for (auto const& [k, v] : _ranges.items()) {
      os << "  verified range " << k << ": " << v.dump() << "\n";
    }
    for (auto const& n : _notes) {
      os << "  note: " << n << "\n";
    }
    return os.str();
  }

}  // namespace ngrpd
