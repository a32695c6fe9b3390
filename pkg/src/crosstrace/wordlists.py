"""Fixed label pools for generated datasets.

Order matters: labels are assigned by index, so edits here change generated
documents byte-for-byte.
"""

SURNAMES = (
    "Andrews", "Chandler", "Baker", "Bennett", "Brooks", "Campbell", "Carter",
    "Coleman", "Collins", "Cooper", "Diaz", "Edwards", "Evans", "Fisher",
    "Foster", "Garcia", "Gibson", "Graham", "Grant", "Gray", "Griffin",
    "Harrison", "Hayes", "Henderson", "Hoffman", "Hughes", "Jensen", "Keller",
    "Kennedy", "Lawrence", "Marshall", "Mason", "Matthews", "McDonald",
    "Mitchell", "Morgan", "Murray", "Nichols", "Olson", "Palmer", "Parker",
    "Pearson", "Peterson", "Porter", "Reynolds", "Richards", "Riley",
    "Sanders", "Shaw", "Simmons", "Spencer", "Stevens", "Sullivan", "Turner",
    "Wallace", "Webb",
)

REGIONS = (
    "North America", "South America", "Western Europe", "Eastern Europe",
    "Scandinavia", "Iberia", "Balkans", "Anatolia", "Levant", "Arabia",
    "Maghreb", "Sahel", "West Africa", "East Africa", "Southern Africa",
    "Central Asia", "South Asia", "Southeast Asia", "East Asia", "Oceania",
    "Caribbean", "Andes", "Patagonia", "Amazonia", "Great Plains",
    "Pacific Northwest", "New England", "Appalachia", "Gulf Coast",
    "Great Lakes", "Rocky Mountains", "Baltics", "Caucasus", "Siberia",
    "Mongolia", "Himalayas", "Mekong Delta", "Outback", "Polynesia",
    "Micronesia", "Melanesia", "Arctic Circle", "Nile Valley", "Horn of Africa",
    "Congo Basin", "Atlas Mountains", "Black Forest", "Provence", "Tuscany",
    "Bavaria", "Galicia", "Normandy", "Lapland", "Crimea", "Azores",
)

ORGANIZATIONS = (
    "Acme Logistics", "Borealis Labs", "Cascade Analytics", "Delta Freight",
    "Epsilon Energy", "Fairview Holdings", "Granite Works", "Harbor Trust",
    "Ionic Systems", "Juniper Media", "Keystone Mining", "Lumen Health",
    "Meridian Capital", "Northwind Shipping", "Obsidian Security",
    "Pinnacle Foods", "Quartz Dynamics", "Redwood Robotics", "Summit Telecom",
    "Trident Marine", "Umbra Optics", "Vertex Pharma", "Westgate Retail",
    "Xenon Motors", "Yardley Textiles", "Zephyr Airlines", "Atlas Cement",
    "Beacon Insurance", "Crescent Bank", "Dynamo Electric", "Everest Gear",
    "Falcon Aerospace", "Gateway Grain", "Horizon Solar", "Ironclad Steel",
    "Jade Imports", "Kodiak Timber", "Latitude Travel", "Monarch Printing",
    "Nimbus Cloudware", "Orchard Produce", "Paragon Legal", "Quill Publishing",
    "Riverstone Realty", "Sterling Audio", "Tundra Outfitters", "Union Rail",
    "Vanguard Biotech", "Willow Creek Farms", "Apex Instruments",
    "Bluecrest Fisheries", "Copperline Utilities", "Dewpoint Irrigation",
    "Emberly Ceramics", "Foxglove Apothecary", "Gildry Goldsmiths",
)
