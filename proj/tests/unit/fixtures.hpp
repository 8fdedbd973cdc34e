#pragma once

#include <gtest/gtest.h>

#include <functional>
#include <string>

#include "arrlog/arrangement.hpp"

namespace fixtures {

inline arrlog::Arrangement<arrlog::RationalField> lib_q(const std::string& name) {
  return arrlog::make_arrangement(arrlog::RationalField{},
                                  arrlog::example_library(name, arrlog::FieldSpec::rationals()));
}

inline arrlog::Arrangement<arrlog::PrimeField> lib_p(const std::string& name, std::uint64_t p) {
  return arrlog::make_arrangement(arrlog::PrimeField(p), arrlog::example_library(name, arrlog::FieldSpec::prime(p)));
}

inline arrlog::ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const arrlog::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return arrlog::ErrorCode::InvalidArgument;
}

}  // namespace fixtures
