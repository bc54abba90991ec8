#include <cstdio>

int main() {
  std::fputs("CLI not wired up yet\n", stderr);
  return 2;
}
