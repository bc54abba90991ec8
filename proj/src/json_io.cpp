namespace newt {}
