// Copyright (c) 2026 The hhx developers
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>
