#pragma once

#include <functional>

#include <gtest/gtest.h>

#include "inkstroke/error.hpp"

namespace testing_support {

inline void expect_error(inkstroke::ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << inkstroke::to_string(code);
  } catch (const inkstroke::Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace testing_support
