#pragma once

#define NWM_VERSION "0.1.0"
