#ifndef CCOUNT_SPACE_REPORT_HPP
#define CCOUNT_SPACE_REPORT_HPP

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ccount {

// Measured bit counts per component plus derived figures (entropy,
// analytical bounds) for one index.
struct SpaceReport {
  std::string scheme;
  uint64_t n = 0;
  uint64_t sigma = 0;
  std::vector<std::pair<std::string, uint64_t>> components;  // name -> bits
  std::vector<std::pair<std::string, double>> metrics;

  uint64_t total_bits() const {
    uint64_t total = 0;
    for (const auto& [name, bits] : components) total += bits;
    return total;
  }

  void print_table(std::ostream& os) const {
    os << "scheme: " << scheme << "  n: " << n << "  sigma: " << sigma << "\n";
    os << "  component bits\n";
    for (const auto& [name, bits] : components)
      os << "    " << std::left << std::setw(28) << name << std::right
         << std::setw(14) << bits << "\n";
    os << "    " << std::left << std::setw(28) << "total" << std::right
       << std::setw(14) << total_bits() << "\n";
    os << std::setprecision(4) << std::fixed;
    os << "    " << std::left << std::setw(28) << "bits per symbol" << std::right
       << std::setw(14) << (n ? double(total_bits()) / double(n) : 0.0) << "\n";
    for (const auto& [name, value] : metrics)
      os << "    " << std::left << std::setw(28) << name << std::right
         << std::setw(14) << value << "\n";
    os.unsetf(std::ios::fixed);
    os << std::setprecision(6);
  }

  void print_machine(std::ostream& os) const {
    os << "scheme=" << scheme << "\n";
    os << "n=" << n << "\n";
    os << "sigma=" << sigma << "\n";
    for (const auto& [name, bits] : components) {
      std::string key = name;
      for (char& c : key)
        if (c == ' ') c = '_';
      os << "bits." << key << "=" << bits << "\n";
    }
    os << "bits.total=" << total_bits() << "\n";
    for (const auto& [name, value] : metrics) {
      std::string key = name;
      for (char& c : key)
        if (c == ' ') c = '_';
      os << "metric." << key << "=" << value << "\n";
    }
  }
};

}  // namespace ccount

#endif  // CCOUNT_SPACE_REPORT_HPP
