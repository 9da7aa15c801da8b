#include <cstdio>
int main(){ std::puts("qzeta cli placeholder"); return 0; }
