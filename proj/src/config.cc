#include "mban/config.hh"

#include <bit>
#include <stdexcept>

namespace mban {

int Config::popcount() const {
  int c = 0;
  for (std::uint64_t word : w) c += std::popcount(word);
  return c;
}

bool Config::all_zero() const {
  for (std::uint64_t word : w)
    if (word) return false;
  return true;
}

bool Config::all_one() const {
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k] != tail_mask(n, k)) return false;
  return true;
}

Config Config::complement() const {
  Config c(n);
  for (std::size_t k = 0; k < w.size(); ++k) c.w[k] = ~w[k] & tail_mask(n, k);
  return c;
}

bool Config::operator<(const Config& o) const {
  if (n != o.n) return n < o.n;
  for (std::size_t k = w.size(); k-- > 0;)
    if (w[k] != o.w[k]) return w[k] < o.w[k];
  return false;
}

std::string Config::to_string() const {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

Config Config::from_string(const std::string& s) {
  Config c(static_cast<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      c.set(static_cast<int>(i), true);
    else if (s[i] != '0')
      throw std::invalid_argument("configuration must be a string over {0,1}");
  }
  return c;
}

}  // namespace mban
