#!/usr/bin/env python3

# This file is part of qspectral, a library for the spectral theory
# of quaternionic right-linear operators.
#
# SPDX-FileCopyrightText: 2026 The qspectral developers
#
# SPDX-License-Identifier: Apache-2.0

import setuptools
import warnings

warnings.filterwarnings("default", module=r"^qspectral\..*")

# This file is still required for compatibility with pip<19.0
# and for "pip install -e .".

setuptools.setup()
