// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rrpn/anchors.hpp"
#include "rrpn/angle.hpp"
#include "rrpn/dataset.hpp"
#include "rrpn/detection_io.hpp"
#include "rrpn/errors.hpp"
#include "rrpn/evaluation.hpp"
#include "rrpn/linking.hpp"
#include "rrpn/matching.hpp"
#include "rrpn/polygon.hpp"
#include "rrpn/regression.hpp"
#include "rrpn/rotated_box.hpp"
#include "rrpn/rroi_pooling.hpp"
#include "rrpn/skew_iou.hpp"
