#ifndef NGRPD_REPORT_HPP_
#define NGRPD_REPORT_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ngrpd {

  using json = nlohmann::json;

  // Precedence when combining: fail > refused > inconclusive > pass.
  enum class Status { pass, inconclusive, refused, fail };

  std::string to_string(Status s);
  Status      combine(Status a, Status b);
  int         exit_code(Status s);

  //! Outcome of a family of instance checks.
  //!
  //! Instances are tallied per named check; failing instances keep their
  //! witness (up to `max_witnesses` per check), passing ones are counted.
  //! The JSON form uses std::map-backed objects so keys come out sorted.
  class Report {
   public:
    explicit Report(std::string command = "") : _command(std::move(command)) {}

    void record(std::string const& check, bool ok, json witness = json());
    void record(std::string const& check, Status status, json witness = json());
    // Registers a check with zero instances (vacuous pass) so it is listed.
    void declare(std::string const& check);
    void set_range(std::string const& key, json value);
    void note(std::string const& text);
    void merge(Report const& other, std::string const& prefix = "");
    void set_command(std::string command) {
      _command = std::move(command);
    }

    Status overall() const;
    bool   passed() const {
      return overall() == Status::pass;
    }
    std::size_t failures(std::string const& check) const;
    std::size_t passes(std::string const& check) const;
    std::size_t instances() const;
    // First failing witness of `check`, or null.
    json first_witness(std::string const& check) const;

    json        to_json() const;
    std::string summary() const;

    std::size_t max_witnesses = 8;

   private:
    struct Tally {
      std::size_t       passed = 0;
      std::size_t       failed = 0;
      std::size_t       refused = 0;
      std::size_t       inconclusive = 0;
      std::vector<json> witnesses;
    };
    std::string                  _command;
    std::map<std::string, Tally> _checks;
    json                         _ranges = json::object();
    std::vector<std::string>     _notes;
  };

}  // namespace ngrpd

#endif  // NGRPD_REPORT_HPP_
