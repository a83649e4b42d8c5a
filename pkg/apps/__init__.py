# TeamSync apps module
