#ifndef SMSAFE_TESTS_SUPPORT_HPP
#define SMSAFE_TESTS_SUPPORT_HPP

#include <string>

#include "doctest.h"
#include "smsafe/formula.hpp"
#include "smsafe/text_io.hpp"

namespace doctest {
template <>
struct StringMaker<smsafe::Formula> {
  static String convert(const smsafe::Formula& f) { return smsafe::print(f).c_str(); }
};
}  // namespace doctest

inline smsafe::Formula S(const std::string& text) { return smsafe::parse(text); }
inline smsafe::Formula F(const std::string& text) { return smsafe::parse(text, smsafe::ParseMode::Formula); }

#endif
